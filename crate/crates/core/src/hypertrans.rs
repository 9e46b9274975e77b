//! The parameter space X ⊂ Z₄⁵ of χ₄-power ₃F₂ parameters, the seven
//! transformation maps f₁…f₇, the group they generate, and orbit-wise
//! equality of ₃F₂ values.
//!
//! A tuple (t₁,…,t₅) stands for ₃F₂(χ₄^{t₁}, χ₄^{t₂}, χ₄^{t₃}; χ₄^{t₄}, χ₄^{t₅} | 1).
//! Membership in X is t₁,t₂,t₃ ∉ {0, t₄, t₅} together with
//! t₁+t₂+t₃ ≢ t₄+t₅ (mod 4); the maps preserve this set.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::charsum::{char_value, hyper3f2_exact, CharSumError, HyperParams, MultChar};
use crate::cyclo::Cyclo8;
use crate::ffield::{FieldCtx, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperTransError {
    #[error("tuple {0} is not in X")]
    NotInX(Tuple5),
    #[error("f{map} sends {from} to {to}, outside X")]
    MapEscapesX {
        map: usize,
        from: Tuple5,
        to: Tuple5,
    },
    #[error("no base map f{0}")]
    UnknownMap(usize),
    #[error("chi4(-1) != 1 for q = {0}; sign prefactors cannot be dropped")]
    SignPrefactor(u64),
    #[error(transparent)]
    CharSum(#[from] CharSumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple5(pub [u8; 5]);

impl Tuple5 {
    pub fn new(t: [i64; 5]) -> Self {
        Tuple5(t.map(|v| v.rem_euclid(4) as u8))
    }

    pub fn in_x(&self) -> bool {
        let [t1, t2, t3, t4, t5] = self.0;
        [t1, t2, t3].iter().all(|&a| a != 0 && a != t4 && a != t5)
            && (t1 + t2 + t3) % 4 != (t4 + t5) % 4
    }

    pub fn params(&self) -> HyperParams {
        HyperParams::chi4_powers(self.0.map(i64::from))
    }

    fn signed(&self) -> [i64; 5] {
        self.0.map(i64::from)
    }
}

impl fmt::Display for Tuple5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.0;
        write!(f, "({a} {b} {c} {d} {e})")
    }
}

/// The five orbit representatives of the ₃F₂ terms in the k₄ expansion.
pub const REPRESENTATIVES: [[i64; 5]; 5] = [
    [1, 1, 1, 0, 0],
    [3, 3, 3, 0, 0],
    [1, 3, 3, 2, 0],
    [3, 1, 1, 2, 0],
    [1, 1, 3, 0, 0],
];

/// The 32 parameter tuples of the ₃F₂ terms in the k₄ expansion.
pub const EXPANSION_TUPLES: [[i64; 5]; 32] = [
    [3, 1, 1, 2, 2],
    [1, 1, 3, 2, 0],
    [3, 1, 1, 0, 2],
    [1, 1, 3, 0, 0],
    [3, 3, 1, 0, 2],
    [1, 3, 3, 0, 0],
    [3, 3, 1, 2, 2],
    [1, 3, 3, 2, 0],
    [3, 1, 3, 2, 2],
    [1, 1, 1, 2, 0],
    [3, 1, 3, 0, 2],
    [1, 1, 1, 0, 0],
    [3, 3, 3, 0, 2],
    [1, 3, 1, 0, 0],
    [3, 3, 3, 2, 2],
    [1, 3, 1, 2, 0],
    [3, 1, 3, 2, 0],
    [1, 1, 1, 2, 2],
    [3, 1, 3, 0, 0],
    [1, 1, 1, 0, 2],
    [3, 3, 3, 0, 0],
    [1, 3, 1, 0, 2],
    [3, 3, 3, 2, 0],
    [1, 3, 1, 2, 2],
    [3, 1, 1, 2, 0],
    [1, 1, 3, 2, 2],
    [3, 1, 1, 0, 0],
    [1, 1, 3, 0, 2],
    [3, 3, 1, 0, 0],
    [1, 3, 3, 0, 2],
    [3, 3, 1, 2, 0],
    [1, 3, 3, 2, 2],
];

/// The affine rule of f₀ (identity) through f₇.
pub fn base_rule(i: usize, t: Tuple5) -> Result<Tuple5, HyperTransError> {
    let [t1, t2, t3, t4, t5] = t.signed();
    let out = match i {
        0 => [t1, t2, t3, t4, t5],
        1 => [t2 - t4, t1 - t4, t3 - t4, -t4, t5 - t4],
        2 => [t1, t1 - t4, t1 - t5, t1 - t2, t1 - t3],
        3 => [t2 - t4, t2, t2 - t5, t2 - t1, t2 - t3],
        4 => [t1, t2, t5 - t3, t1 + t2 - t4, t5],
        5 => [t1, t4 - t2, t3, t4, t1 + t3 - t5],
        6 => [t4 - t1, t2, t3, t4, t2 + t3 - t5],
        7 => [t4 - t1, t4 - t2, t3, t4, t4 + t5 - t1 - t2],
        _ => return Err(HyperTransError::UnknownMap(i)),
    };
    Ok(Tuple5::new(out))
}

/// A map X → X, stored as a permutation of the indices of [`ParamSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformMap {
    pub name: String,
    perm: Vec<usize>,
}

impl TransformMap {
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// X, enumerated in lexicographic order.
#[derive(Debug, Clone)]
pub struct ParamSpace {
    tuples: Vec<Tuple5>,
    index: HashMap<Tuple5, usize>,
}

impl Default for ParamSpace {
    fn default() -> Self {
        Self::new()
    }
}

impl ParamSpace {
    pub fn new() -> Self {
        let tuples: Vec<Tuple5> = (0..4u32.pow(5))
            .map(|n| Tuple5(std::array::from_fn(|k| ((n >> (2 * (4 - k))) & 3) as u8)))
            .filter(Tuple5::in_x)
            .collect();
        let index = tuples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        ParamSpace { tuples, index }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Tuple5] {
        &self.tuples
    }

    pub fn index_of(&self, t: Tuple5) -> Result<usize, HyperTransError> {
        self.index
            .get(&t)
            .copied()
            .ok_or(HyperTransError::NotInX(t))
    }

    /// f_i as a permutation of X; fails if f_i leaves X anywhere.
    pub fn base_map(&self, i: usize) -> Result<TransformMap, HyperTransError> {
        let perm = self
            .tuples
            .iter()
            .map(|&t| {
                let to = base_rule(i, t)?;
                self.index
                    .get(&to)
                    .copied()
                    .ok_or(HyperTransError::MapEscapesX {
                        map: i,
                        from: t,
                        to,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TransformMap {
            name: format!("f{i}"),
            perm,
        })
    }

    pub fn generators(&self) -> Result<Vec<TransformMap>, HyperTransError> {
        (1..=7).map(|i| self.base_map(i)).collect()
    }

    pub fn apply(&self, f: &TransformMap, t: Tuple5) -> Result<Tuple5, HyperTransError> {
        Ok(self.tuples[f.perm[self.index_of(t)?]])
    }

    /// f ∘ g.
    pub fn compose(&self, f: &TransformMap, g: &TransformMap) -> TransformMap {
        TransformMap {
            name: format!("{}∘{}", f.name, g.name),
            perm: g.perm.iter().map(|&i| f.perm[i]).collect(),
        }
    }

    /// Closure of {f₁,…,f₇} under composition, in breadth-first order from f₀.
    pub fn generate_group(&self) -> Result<Vec<TransformMap>, HyperTransError> {
        let gens = self.generators()?;
        let id = self.base_map(0)?;
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        seen.insert(id.perm.clone(), ());
        let mut group = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for h in &gens {
                let c = if g.is_identity() {
                    h.clone()
                } else {
                    self.compose(h, &g)
                };
                if seen.insert(c.perm.clone(), ()).is_none() {
                    group.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        Ok(group)
    }

    /// {f₀, fᵢ, fⱼ∘f_l, f₄∘f₁, f₆∘f₂, f₅∘f₃, f₁∘f₄∘f₁ : 1≤i≤7, 1≤j≤3, 4≤l≤7}.
    pub fn explicit_group(&self) -> Result<Vec<TransformMap>, HyperTransError> {
        let f: Vec<TransformMap> = (0..=7)
            .map(|i| self.base_map(i))
            .collect::<Result<_, _>>()?;
        let mut out = f.clone();
        for j in 1..=3 {
            for l in 4..=7 {
                out.push(self.compose(&f[j], &f[l]));
            }
        }
        out.push(self.compose(&f[4], &f[1]));
        out.push(self.compose(&f[6], &f[2]));
        out.push(self.compose(&f[5], &f[3]));
        out.push(self.compose(&f[1], &self.compose(&f[4], &f[1])));
        Ok(out)
    }

    /// Whether two families act as the same set of functions on X.
    pub fn same_functions(a: &[TransformMap], b: &[TransformMap]) -> bool {
        let sa: BTreeSet<&[usize]> = a.iter().map(|m| m.perm.as_slice()).collect();
        let sb: BTreeSet<&[usize]> = b.iter().map(|m| m.perm.as_slice()).collect();
        sa == sb
    }

    pub fn distinct_count(family: &[TransformMap]) -> usize {
        family
            .iter()
            .map(|m| m.perm.as_slice())
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn is_closed(&self, family: &[TransformMap]) -> bool {
        let set: BTreeSet<&[usize]> = family.iter().map(|m| m.perm.as_slice()).collect();
        family.iter().all(|f| {
            family
                .iter()
                .all(|g| set.contains(self.compose(f, g).perm.as_slice()))
        })
    }

    /// Orbits of X under the generated group, each sorted, ordered by smallest member.
    pub fn orbits(&self) -> Result<Vec<Vec<Tuple5>>, HyperTransError> {
        let group = self.generate_group()?;
        let mut assigned = vec![false; self.len()];
        let mut out = Vec::new();
        for i in 0..self.len() {
            if assigned[i] {
                continue;
            }
            let members: BTreeSet<usize> = group.iter().map(|g| g.perm[i]).collect();
            for &k in &members {
                assigned[k] = true;
            }
            out.push(members.into_iter().map(|k| self.tuples[k]).collect());
        }
        Ok(out)
    }
}

pub fn orbit_containing(orbits: &[Vec<Tuple5>], t: Tuple5) -> Option<usize> {
    orbits.iter().position(|o| o.binary_search(&t).is_ok())
}

/// One orbit's ₃F₂ values at λ = 1.
#[derive(Debug, Clone)]
pub struct OrbitValues {
    pub representative: Tuple5,
    pub size: usize,
    pub value: Cyclo8,
    /// First member whose value differs from the representative's.
    pub mismatch: Option<(Tuple5, Cyclo8)>,
}

impl OrbitValues {
    pub fn uniform(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Evaluates hyper3f2_exact at λ = 1 on every tuple of X and compares within orbits.
pub fn orbit_value_check(ctx: &FieldCtx) -> Result<Vec<OrbitValues>, HyperTransError> {
    if char_value(ctx, MultChar::CHI4, ctx.minus_one()) != Cyclo8::one() {
        return Err(HyperTransError::SignPrefactor(ctx.q()));
    }
    let space = ParamSpace::new();
    let mut out = Vec::new();
    for orbit in space.orbits()? {
        let representative = orbit[0];
        let value = hyper3f2_exact(ctx, &representative.params(), FieldElement::ONE)?;
        let mut mismatch = None;
        for &t in &orbit[1..] {
            let v = hyper3f2_exact(ctx, &t.params(), FieldElement::ONE)?;
            if v != value {
                mismatch = Some((t, v));
                break;
            }
        }
        out.push(OrbitValues {
            representative,
            size: orbit.len(),
            value,
            mismatch,
        });
    }
    Ok(out)
}
