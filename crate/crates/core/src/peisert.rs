//! Peisert graphs P*(q): vertex set F_q, with ab an edge iff
//! a − b ∈ H = ⟨g⁴⟩ ∪ g⟨g⁴⟩. Brute-force clique counts, the closed forms for
//! k₃ and k₄, the u² + 2v² = q solver, and the asymptotic diagnostics.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::charsum::{hyper3f2_exact, CharSumError, HyperParams};
use crate::cyclo::{Cyclo8, NotRational};
use crate::ffield::{FieldCtx, FieldElement, FieldError, PrimePower};
use crate::report::CheckRecord;

/// Largest q for brute-force counting of m-cliques, m = 3, 4, 5.
pub const BRUTE_BOUNDS: [(usize, u64); 3] = [(3, 6561), (4, 961), (5, 361)];

pub fn brute_bound(m: usize) -> Option<u64> {
    BRUTE_BOUNDS.iter().find(|&&(k, _)| k == m).map(|&(_, b)| b)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeisertError {
    #[error("clique order {0} not supported (expected 3..=5)")]
    UnsupportedOrder(usize),
    #[error("q = {q} exceeds the brute-force bound {bound} for m = {m}")]
    BruteBound { m: usize, q: u64, bound: u64 },
    #[error(
        "expected exactly one normalized u with q = u^2 + 2v^2 for q = {q}, found {candidates:?}"
    )]
    UvNotUnique { q: u64, candidates: Vec<(i64, u64)> },
    #[error("non-integral closed form: {0}")]
    NonIntegral(String),
    #[error("{0} is not a primitive element")]
    NotPrimitive(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    CharSum(#[from] CharSumError),
    #[error(transparent)]
    NotRational(#[from] NotRational),
}

/// Adjacency as q rows of ⌈q/64⌉ words, plus the forward rows
/// N⁺(v) = N(v) ∩ {w > v} used for counting.
#[derive(Clone)]
pub struct PeisertGraph<'a> {
    ctx: &'a FieldCtx,
    g: FieldElement,
    words: usize,
    adj: Vec<u64>,
    fwd: Vec<u64>,
}

impl std::fmt::Debug for PeisertGraph<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PeisertGraph(q={}, g={})", self.ctx.q(), self.g.enc())
    }
}

#[inline]
fn popcount(a: &[u64]) -> u64 {
    a.iter().map(|w| w.count_ones() as u64).sum()
}

#[inline]
fn and_popcount(a: &[u64], b: &[u64]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as u64)
        .sum()
}

fn bits(a: &[u64]) -> impl Iterator<Item = usize> + '_ {
    a.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

/// Membership in ⟨g⁴⟩ ∪ g⟨g⁴⟩ for the given primitive element, indexed by enc.
fn h_table(ctx: &FieldCtx, g: FieldElement) -> Vec<bool> {
    let mut in_h = vec![false; ctx.size()];
    let mut x = FieldElement::ONE;
    for j in 0..ctx.q() - 1 {
        if j % 4 < 2 {
            in_h[x.index()] = true;
        }
        x = ctx.mul(x, g);
    }
    in_h
}

pub fn build_graph(ctx: &FieldCtx) -> PeisertGraph<'_> {
    PeisertGraph::with_table(ctx, ctx.generator(), &h_table(ctx, ctx.generator()))
}

/// P*(q) built from an arbitrary primitive element g'.
pub fn build_with_generator(
    ctx: &FieldCtx,
    g: FieldElement,
) -> Result<PeisertGraph<'_>, PeisertError> {
    if g.is_zero() || ctx.order(g)? != ctx.q() - 1 {
        return Err(PeisertError::NotPrimitive(g.enc()));
    }
    Ok(PeisertGraph::with_table(ctx, g, &h_table(ctx, g)))
}

impl<'a> PeisertGraph<'a> {
    fn with_table(ctx: &'a FieldCtx, g: FieldElement, in_h: &[bool]) -> Self {
        let n = ctx.size();
        let words = n.div_ceil(64);
        let hs: Vec<FieldElement> = ctx.elements().filter(|x| in_h[x.index()]).collect();
        let mut adj = vec![0u64; n * words];
        adj.par_chunks_mut(words).enumerate().for_each(|(a, row)| {
            let a = FieldElement::from_index(a);
            for &h in &hs {
                let b = ctx.add(a, h).index();
                row[b / 64] |= 1 << (b % 64);
            }
        });
        let mut fwd = adj.clone();
        fwd.par_chunks_mut(words).enumerate().for_each(|(v, row)| {
            // clear bits 0..=v
            let full = (v + 1) / 64;
            row[..full].iter_mut().for_each(|w| *w = 0);
            if full < words {
                let r = (v + 1) % 64;
                row[full] &= !((1u64 << r) - 1);
            }
        });
        PeisertGraph {
            ctx,
            g,
            words,
            adj,
            fwd,
        }
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn q(&self) -> u64 {
        self.ctx.q()
    }

    pub fn generator(&self) -> FieldElement {
        self.g
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    fn fwd_row(&self, v: usize) -> &[u64] {
        &self.fwd[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn adjacent(&self, a: FieldElement, b: FieldElement) -> bool {
        let (a, b) = (a.index(), b.index());
        self.adj[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, v: FieldElement) -> u64 {
        popcount(self.row(v.index()))
    }

    pub fn edge_count(&self) -> u64 {
        popcount(&self.fwd)
    }

    pub fn same_edges(&self, other: &PeisertGraph<'_>) -> bool {
        self.adj == other.adj
    }

    /// First pair (a, b) with adj(a, b) ≠ adj'(π a, π b) in `other`.
    pub fn first_mismatch(
        &self,
        other: &PeisertGraph<'_>,
        perm: &[usize],
    ) -> Option<(usize, usize)> {
        let n = self.ctx.size();
        (0..n).find_map(|a| {
            let ra = self.row(a);
            let rb = other.row(perm[a]);
            (0..n)
                .find(|&b| (ra[b / 64] >> (b % 64) & 1) != (rb[perm[b] / 64] >> (perm[b] % 64) & 1))
                .map(|b| (a, b))
        })
    }

    /// Bitset of the given vertex set.
    pub fn vertex_mask(&self, vs: impl IntoIterator<Item = FieldElement>) -> Vec<u64> {
        let mut mask = vec![0u64; self.words];
        for v in vs {
            mask[v.index() / 64] |= 1 << (v.index() % 64);
        }
        mask
    }

    /// H as a vertex set: the neighbourhood of 0.
    pub fn h_mask(&self) -> Vec<u64> {
        self.row(0).to_vec()
    }

    fn extend(&self, cand: &[u64], depth: usize, scratch: &mut [Vec<u64>]) -> u64 {
        if depth == 1 {
            return popcount(cand);
        }
        let (cur, rest) = scratch.split_first_mut().expect("scratch depth");
        let mut total = 0;
        for v in bits(cand) {
            let row = self.fwd_row(v);
            if depth == 2 {
                total += and_popcount(cand, row);
            } else {
                for ((c, a), b) in cur.iter_mut().zip(cand).zip(row) {
                    *c = a & b;
                }
                total += self.extend(cur, depth - 1, rest);
            }
        }
        total
    }

    /// Number of m-cliques inside the vertex set `mask` (all of F_q if None).
    pub fn count_cliques_in(&self, m: usize, mask: Option<&[u64]>) -> u64 {
        match m {
            0 => return 1,
            1 => return mask.map_or(self.q(), popcount),
            _ => {}
        }
        (0..self.ctx.size())
            .into_par_iter()
            .filter(|&v| mask.is_none_or(|mk| mk[v / 64] >> (v % 64) & 1 == 1))
            .map_init(
                || vec![vec![0u64; self.words]; m],
                |scratch, v| {
                    let (first, rest) = scratch.split_first_mut().unwrap();
                    for (i, c) in first.iter_mut().enumerate() {
                        let f = self.fwd_row(v)[i];
                        *c = mask.map_or(f, |mk| f & mk[i]);
                    }
                    self.extend(first, m - 1, rest)
                },
            )
            .sum()
    }

    /// Triangles of the subgraph induced on `mask` that contain v.
    pub fn triangles_through(&self, v: FieldElement, mask: &[u64]) -> u64 {
        let nb: Vec<u64> = self
            .row(v.index())
            .iter()
            .zip(mask)
            .map(|(a, b)| a & b)
            .collect();
        let twice: u64 = bits(&nb).map(|w| and_popcount(&nb, self.row(w))).sum();
        twice / 2
    }

    pub fn brute_cliques(&self, m: usize) -> Result<u64, PeisertError> {
        let bound = brute_bound(m).ok_or(PeisertError::UnsupportedOrder(m))?;
        self.brute_cliques_bounded(m, bound)
    }

    pub fn brute_cliques_bounded(&self, m: usize, bound: u64) -> Result<u64, PeisertError> {
        if !(3..=5).contains(&m) {
            return Err(PeisertError::UnsupportedOrder(m));
        }
        if self.q() > bound {
            return Err(PeisertError::BruteBound {
                m,
                q: self.q(),
                bound,
            });
        }
        Ok(self.count_cliques_in(m, None))
    }
}

/// k₃ = q(q−1)(q−5)/48.
pub fn k3_formula(q: u64) -> Result<u64, PeisertError> {
    let num = q as u128 * (q as u128 - 1) * (q as u128 - 5);
    if !num.is_multiple_of(48) {
        return Err(PeisertError::NonIntegral(format!(
            "q(q-1)(q-5)/48 at q = {q}"
        )));
    }
    Ok((num / 48) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UvRep {
    pub u: i64,
    pub v: u64,
}

/// The representation q = u² + 2v² with u ≡ 3 (mod 4), and p ∤ u when p ≡ 3 (mod 8).
pub fn uv_solve(pp: PrimePower) -> Result<UvRep, PeisertError> {
    let q = pp.q as i64;
    let mut found: Vec<(i64, u64)> = Vec::new();
    let mut v = 0i64;
    while 2 * v * v <= q {
        let r = q - 2 * v * v;
        let s = r.sqrt();
        if s * s == r {
            for u in [s, -s] {
                let keep = u.rem_euclid(4) == 3 && (pp.p % 8 != 3 || u % pp.p as i64 != 0);
                if keep && !found.contains(&(u, v as u64)) {
                    found.push((u, v as u64));
                }
            }
        }
        v += 1;
    }
    match found.as_slice() {
        [(u, v)] => Ok(UvRep { u: *u, v: *v }),
        _ => Err(PeisertError::UvNotUnique {
            q: pp.q,
            candidates: found,
        }),
    }
}

/// q²·₃F₂(χ₄, χ₄, χ₄³; ε, ε | 1), an integer.
pub fn hyper_q2(ctx: &FieldCtx) -> Result<(BigInt, Cyclo8), PeisertError> {
    let f = hyper3f2_exact(ctx, &HyperParams::k4_term(), FieldElement::ONE)?;
    let q = BigInt::from(ctx.q());
    let scaled = f.scale(&BigRational::from_integer(&q * &q));
    Ok((scaled.as_integer()?, f))
}

/// Quantities entering the k₄ closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K4Terms {
    pub uv: UvRep,
    pub neg_p_pow_t: i64,
    pub hyper_q2: BigInt,
    pub hyper: Cyclo8,
    pub bracket: BigInt,
    pub k4: u64,
}

/// k₄ = q(q−1)/3072 · [2(q²−20q+81) + 2u(−p)^t + 3q²·₃F₂(χ₄,χ₄,χ₄³; ε,ε | 1)].
pub fn k4_formula(ctx: &FieldCtx) -> Result<K4Terms, PeisertError> {
    let pp = ctx.prime_power();
    let uv = uv_solve(pp)?;
    let (hq2, hyper) = hyper_q2(ctx)?;
    let q = BigInt::from(pp.q);
    let npt = pp.neg_p_pow_t();
    let bracket = BigInt::from(2) * (&q * &q - BigInt::from(20) * &q + 81)
        + BigInt::from(2 * uv.u * npt)
        + BigInt::from(3) * &hq2;
    let num: BigInt = &q * (&q - 1) * &bracket;
    let (k4, rem) = num.div_rem(&BigInt::from(3072));
    if !rem.is_zero() || k4.is_negative() {
        return Err(PeisertError::NonIntegral(format!(
            "k4 numerator {num} at q = {}",
            pp.q
        )));
    }
    let k4 = k4
        .to_u64()
        .ok_or_else(|| PeisertError::NonIntegral(k4.to_string()))?;
    Ok(K4Terms {
        uv,
        neg_p_pow_t: npt,
        hyper_q2: hq2,
        hyper,
        bracket,
        k4,
    })
}

/// Paired brute-force and closed-form counts of m-cliques.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueReport {
    pub m: usize,
    pub q: u64,
    pub brute: Option<u64>,
    pub formula: Option<u64>,
    pub u: Option<i64>,
    pub rho: Option<i64>,
    pub hyper_q2: Option<BigInt>,
}

impl CliqueReport {
    pub fn consistent(&self) -> bool {
        match (self.brute, self.formula) {
            (Some(b), Some(f)) => b == f,
            _ => true,
        }
    }
}

/// Brute force when q is within `max_brute_q` and the per-m bound; closed form for m ≤ 4.
pub fn clique_report(
    ctx: &FieldCtx,
    graph: Option<&PeisertGraph<'_>>,
    m: usize,
    max_brute_q: u64,
) -> Result<CliqueReport, PeisertError> {
    let bound = brute_bound(m)
        .ok_or(PeisertError::UnsupportedOrder(m))?
        .min(max_brute_q);
    let brute = match graph {
        Some(g) if ctx.q() <= bound => Some(g.brute_cliques_bounded(m, bound)?),
        _ => None,
    };
    let mut r = CliqueReport {
        m,
        q: ctx.q(),
        brute,
        formula: None,
        u: None,
        rho: None,
        hyper_q2: None,
    };
    match m {
        3 => r.formula = Some(k3_formula(ctx.q())?),
        4 => {
            let t = k4_formula(ctx)?;
            r.formula = Some(t.k4);
            r.u = Some(t.uv.u);
            r.rho = Some(ctx.prime_power().rho());
            r.hyper_q2 = Some(t.hyper_q2);
        }
        _ => {}
    }
    Ok(r)
}

/// Degree, symmetry, self-complement, g-independence and automorphism witnesses.
pub fn structural_checks(graph: &PeisertGraph<'_>, g_independence_max_q: u64) -> Vec<CheckRecord> {
    let ctx = graph.ctx();
    let q = ctx.q();
    let mut out = Vec::new();
    let elems: Vec<FieldElement> = ctx.elements().collect();

    let bad_degree = elems.iter().find(|&&v| graph.degree(v) != (q - 1) / 2);
    out.push(CheckRecord::new(
        "structure.degree",
        q,
        bad_degree.is_none(),
        (q - 1) / 2,
        bad_degree.map_or((q - 1) / 2, |&v| graph.degree(v)),
        bad_degree.map(|v| format!("vertex {}", v.enc())),
    ));
    out.push(CheckRecord::compare(
        "structure.edges",
        q,
        q * (q - 1) / 4,
        graph.edge_count(),
    ));

    let mut sym_bad = None;
    'sym: for &a in &elems {
        if graph.adjacent(a, a) {
            sym_bad = Some(format!("loop at {}", a.enc()));
            break;
        }
        for &b in &elems {
            if graph.adjacent(a, b) != graph.adjacent(b, a) {
                sym_bad = Some(format!("{} {}", a.enc(), b.enc()));
                break 'sym;
            }
        }
    }
    out.push(CheckRecord::new(
        "structure.symmetric",
        q,
        sym_bad.is_none(),
        "symmetric, loopless",
        sym_bad.as_deref().unwrap_or("symmetric, loopless"),
        sym_bad.clone(),
    ));

    let g2 = ctx.mul(graph.generator(), graph.generator());
    let scaled: Vec<FieldElement> = elems.iter().map(|&x| ctx.mul(g2, x)).collect();
    let mut comp_bad = None;
    let mut pairs = 0u64;
    'comp: for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate().skip(i + 1) {
            pairs += 1;
            if graph.adjacent(a, b) == graph.adjacent(scaled[i], scaled[j]) {
                comp_bad = Some(format!("{} {}", a.enc(), b.enc()));
                break 'comp;
            }
        }
    }
    out.push(CheckRecord::new(
        "structure.self_complement",
        q,
        comp_bad.is_none(),
        format!("{} pairs flipped", q * (q - 1) / 2),
        format!("{pairs} pairs flipped"),
        comp_bad.clone(),
    ));

    if q <= g_independence_max_q {
        let prims = ctx.primitive_elements();
        let others: Vec<(FieldElement, PeisertGraph<'_>)> = prims
            .iter()
            .filter_map(|&h| build_with_generator(ctx, h).ok().map(|gr| (h, gr)))
            .collect();
        let differing: Vec<u32> = others
            .iter()
            .filter(|(_, gr)| !gr.same_edges(graph))
            .map(|(h, _)| h.enc())
            .collect();
        out.push(CheckRecord::new(
            "structure.g_independence",
            q,
            differing.is_empty(),
            format!("{} generators give the same edge set", prims.len()),
            format!(
                "{} generators give the same edge set",
                prims.len() - differing.len()
            ),
            differing.first().map(|e| format!("generator {e}")),
        ));
        // x ↦ x^p carries ⟨g⁴⟩ ∪ g⟨g⁴⟩ onto ⟨g⁴⟩ ∪ g^p⟨g⁴⟩, and p ≡ 3 (mod 4)
        let frob: Vec<usize> = elems.iter().map(|&x| ctx.frobenius(x).index()).collect();
        let ident: Vec<usize> = (0..elems.len()).collect();
        let unmatched: Vec<u32> = others
            .iter()
            .filter(|(_, gr)| {
                graph.first_mismatch(gr, &ident).is_some()
                    && graph.first_mismatch(gr, &frob).is_some()
            })
            .map(|(h, _)| h.enc())
            .collect();
        out.push(CheckRecord::new(
            "structure.g_independence_up_to_frobenius",
            q,
            unmatched.is_empty() && others.len() == prims.len(),
            format!("{} generators give an isomorphic graph", prims.len()),
            format!(
                "{} generators give an isomorphic graph",
                others.len() - unmatched.len()
            ),
            unmatched.first().map(|e| format!("generator {e}")),
        ));
    }

    let check_map = |name: &str, maps: &mut dyn Iterator<Item = (String, Vec<usize>)>| {
        let mut count = 0u64;
        let mut bad = None;
        for (label, perm) in maps {
            count += 1;
            if let Some((a, b)) = graph.first_mismatch(graph, &perm) {
                bad = Some(format!("{label}: pair {a} {b}"));
                break;
            }
        }
        let ok = bad.is_none();
        CheckRecord::new(
            name,
            q,
            ok,
            "automorphism",
            if ok {
                "automorphism"
            } else {
                "not an automorphism"
            },
            Some(bad.unwrap_or_else(|| format!("{count} maps"))),
        )
    };
    let mut translations = elems.iter().map(|&c| {
        (
            format!("x+{}", c.enc()),
            elems.iter().map(|&x| ctx.add(x, c).index()).collect(),
        )
    });
    out.push(check_map("structure.translations", &mut translations));
    let g4 = ctx.pow(graph.generator(), 4);
    let mut scalings = (0..(q - 1) / 4).map(|j| {
        let h = ctx.pow(g4, j);
        (
            format!("{}*x", h.enc()),
            elems.iter().map(|&x| ctx.mul(h, x).index()).collect(),
        )
    });
    out.push(check_map("structure.quartic_scaling", &mut scalings));

    let lg = ctx.log_of(ctx.minus_one()).unwrap_or(u32::MAX);
    out.push(CheckRecord::new(
        "structure.minus_one_in_g4",
        q,
        lg.is_multiple_of(4),
        "dlog(-1) = 0 mod 4",
        format!("dlog(-1) = {lg}"),
        None,
    ));
    out
}

/// Direct counts on the subgraph ⟨H⟩ induced by the neighbourhood of 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HCounts {
    pub edges: u64,
    pub triangles: u64,
    pub triangles_at_one: u64,
    pub triangles_at_g: u64,
}

pub fn h_counts(graph: &PeisertGraph<'_>) -> HCounts {
    let mask = graph.h_mask();
    HCounts {
        edges: graph.count_cliques_in(2, Some(&mask)),
        triangles: graph.count_cliques_in(3, Some(&mask)),
        triangles_at_one: graph.triangles_through(FieldElement::ONE, &mask),
        triangles_at_g: graph.triangles_through(graph.generator(), &mask),
    }
}

/// Counting identities relating P*(q) to ⟨H⟩.
pub fn h_subgraph_checks(graph: &PeisertGraph<'_>) -> Result<Vec<CheckRecord>, PeisertError> {
    let q = graph.q();
    let h = h_counts(graph);
    let k3 = graph.brute_cliques(3)?;
    let mut out = vec![CheckRecord::compare(
        "h.edges",
        q,
        (q - 1) * (q - 5) / 16,
        h.edges,
    )];
    out.push(
        CheckRecord::compare("h.k3_from_edges", q, 3 * k3, q * h.edges)
            .with_witness(format!("k3 = {k3}; edges(<H>) = {}", h.edges)),
    );
    out.push(
        CheckRecord::compare("h.one_vs_g", q, h.triangles_at_one, h.triangles_at_g).with_witness(
            format!(
                "k3(<H> at 1) = {}; k3(<H> at g) = {}",
                h.triangles_at_one, h.triangles_at_g
            ),
        ),
    );
    out.push(
        CheckRecord::compare(
            "h.k3_from_vertex_counts",
            q,
            12 * h.triangles,
            (q - 1) * (h.triangles_at_one + h.triangles_at_g),
        )
        .with_witness(format!("k3(<H>) = {}", h.triangles)),
    );
    if let Some(bound) = brute_bound(4) {
        if q <= bound {
            let k4 = graph.brute_cliques(4)?;
            out.push(
                CheckRecord::compare("h.k4_from_triangles", q, 4 * k4, q * h.triangles)
                    .with_witness(format!("k4 = {k4}; k3(<H>) = {}", h.triangles)),
            );
        }
    }
    Ok(out)
}

/// 1/(2^{C(m,2)}·m!).
pub fn clique_limit(m: usize) -> BigRational {
    let pairs = (m * (m - 1) / 2) as u32;
    let fact: u64 = (1..=m as u64).product();
    BigRational::new(1.into(), BigInt::from(2u64.pow(pairs)) * BigInt::from(fact))
}

/// [2^{m−1}(q−m+1) ∓ 2^{2m}(1 + 2^m·3m√q)(3^{m−1}−1)] / (m·4^{m−1}·q), with √q = p^t.
pub fn envelope_factors(pp: PrimePower, m: usize) -> (BigRational, BigRational) {
    let m_i = m as i64;
    let q = BigInt::from(pp.q);
    let sqrt_q = BigInt::from(pp.p.pow(pp.t));
    let main = BigInt::from(1i64 << (m - 1)) * (&q - m_i + 1);
    let err = BigInt::from(1i64 << (2 * m))
        * (BigInt::from(1) + BigInt::from((1i64 << m) * 3 * m_i) * sqrt_q)
        * BigInt::from(3i64.pow(m as u32 - 1) - 1);
    let den = BigInt::from(m_i * 4i64.pow(m as u32 - 1)) * q;
    (
        BigRational::new(&main - &err, den.clone()),
        BigRational::new(main + err, den),
    )
}

/// One row of the asymptotic table.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticRow {
    pub m: usize,
    pub q: u64,
    pub count: u64,
    pub ratio: BigRational,
    pub limit: BigRational,
    pub deviation: BigRational,
    /// m = 3: [limit − 1/(8q), limit + 1/(8q)]; m ≥ 4: [L·r, U·r] with r = k_{m−1}/q^{m−1}.
    pub envelope: (BigRational, BigRational),
}

impl AsymptoticRow {
    pub fn within_envelope(&self) -> bool {
        self.envelope.0 <= self.ratio && self.ratio <= self.envelope.1
    }
}

fn q_pow(q: u64, m: usize) -> BigInt {
    num_traits::pow(BigInt::from(q), m)
}

/// k_m for the asymptotic table: closed form for m ≤ 4, brute force for m = 5.
pub fn count_for_asymptotics(ctx: &FieldCtx, m: usize) -> Result<u64, PeisertError> {
    match m {
        3 => k3_formula(ctx.q()),
        4 => Ok(k4_formula(ctx)?.k4),
        5 => build_graph(ctx).brute_cliques(5),
        _ => Err(PeisertError::UnsupportedOrder(m)),
    }
}

pub fn asymptotic_row(ctx: &FieldCtx, m: usize) -> Result<AsymptoticRow, PeisertError> {
    let q = ctx.q();
    let count = count_for_asymptotics(ctx, m)?;
    let ratio = BigRational::new(BigInt::from(count), q_pow(q, m));
    let limit = clique_limit(m);
    let deviation = (&ratio - &limit).abs();
    let envelope = if m == 3 {
        let r = BigRational::new(1.into(), BigInt::from(8 * q));
        (&limit - &r, &limit + &r)
    } else {
        let prev = count_for_asymptotics(ctx, m - 1)?;
        let r = BigRational::new(BigInt::from(prev), q_pow(q, m - 1));
        let (lo, hi) = envelope_factors(ctx.prime_power(), m);
        (lo * &r, hi * r)
    };
    Ok(AsymptoticRow {
        m,
        q,
        count,
        ratio,
        limit,
        deviation,
        envelope,
    })
}

pub fn asymptotic_scan(ctxs: &[FieldCtx], m: usize) -> Result<Vec<AsymptoticRow>, PeisertError> {
    ctxs.iter().map(|c| asymptotic_row(c, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_field;

    #[test]
    fn q9_graph_basics() {
        let f = build_field(3, 1).unwrap();
        let g = build_graph(&f);
        assert_eq!(g.edge_count(), 18);
        assert!(g.adjacent(FieldElement::ZERO, f.generator()));
        assert!(!g.adjacent(FieldElement::ZERO, f.exp(2)));
        assert!(f.elements().all(|v| g.degree(v) == 4));
    }

    #[test]
    fn q9_and_q49_counts() {
        let f = build_field(3, 1).unwrap();
        let g = build_graph(&f);
        assert_eq!(g.brute_cliques(3).unwrap(), 6);
        assert_eq!(g.brute_cliques(4).unwrap(), 0);
        let f = build_field(7, 1).unwrap();
        let g = build_graph(&f);
        assert_eq!(g.brute_cliques(3).unwrap(), 2156);
        assert_eq!(g.brute_cliques(4).unwrap(), 2156);
        assert!(g.brute_cliques(6).is_err());
        assert!(g.brute_cliques_bounded(4, 9).is_err());
    }

    #[test]
    fn triangle_count_matches_naive_enumeration() {
        let f = build_field(3, 1).unwrap();
        let g = build_graph(&f);
        let v: Vec<FieldElement> = f.elements().collect();
        let mut n = 0;
        for i in 0..9 {
            for j in i + 1..9 {
                for k in j + 1..9 {
                    if g.adjacent(v[i], v[j]) && g.adjacent(v[j], v[k]) && g.adjacent(v[i], v[k]) {
                        n += 1;
                    }
                }
            }
        }
        assert_eq!(n, 6);
    }

    #[test]
    fn k3_values() {
        assert_eq!(k3_formula(9).unwrap(), 6);
        assert_eq!(k3_formula(49).unwrap(), 2156);
        assert_eq!(k3_formula(81).unwrap(), 10260);
    }

    #[test]
    fn uv_values() {
        let uv = |q| uv_solve(PrimePower::from_q(q, 1 << 14).unwrap()).unwrap();
        assert_eq!(uv(9), UvRep { u: -1, v: 2 });
        assert_eq!(uv(49), UvRep { u: 7, v: 0 });
        assert_eq!(uv(81).u, 7);
        assert_eq!(uv(361).u, -17);
    }

    #[test]
    fn k4_formula_small() {
        let f = build_field(3, 1).unwrap();
        let t = k4_formula(&f).unwrap();
        assert_eq!((t.k4, t.hyper_q2.clone()), (0, BigInt::from(10)));
        let f = build_field(7, 1).unwrap();
        assert_eq!(k4_formula(&f).unwrap().k4, 2156);
    }

    #[test]
    fn structure_and_h_identities_q9() {
        let f = build_field(3, 1).unwrap();
        let g = build_graph(&f);
        let s = structural_checks(&g, 121);
        let failed: Vec<&str> = s
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.check.as_str())
            .collect();
        assert_eq!(failed, vec!["structure.g_independence"]);
        let h = h_counts(&g);
        assert_eq!(h.edges, 2);
        assert_eq!(h.triangles_at_one, h.triangles_at_g);
        assert!(h_subgraph_checks(&g)
            .unwrap()
            .iter()
            .all(CheckRecord::passed));
    }

    #[test]
    fn rejects_non_primitive_generator() {
        let f = build_field(3, 1).unwrap();
        assert!(build_with_generator(&f, f.exp(2)).is_err());
        let base = build_graph(&f);
        let frob: Vec<usize> = f.elements().map(|x| f.frobenius(x).index()).collect();
        for h in f.primitive_elements() {
            let other = build_with_generator(&f, h).unwrap();
            let k = f.dlog(h).unwrap();
            if k % 4 == 1 {
                assert!(other.same_edges(&base));
            } else {
                assert!(!other.same_edges(&base));
                assert_eq!(base.first_mismatch(&other, &frob), None);
            }
        }
    }

    #[test]
    fn limits() {
        assert_eq!(clique_limit(3), BigRational::new(1.into(), 48.into()));
        assert_eq!(clique_limit(4), BigRational::new(1.into(), 1536.into()));
        assert_eq!(clique_limit(5), BigRational::new(1.into(), 122880.into()));
    }

    #[test]
    fn m3_deviation_bound() {
        let f = build_field(7, 1).unwrap();
        let r = asymptotic_row(&f, 3).unwrap();
        assert!(r.within_envelope());
        // |(−6q+5)/(48q²)|
        let exact = BigRational::new(BigInt::from(6 * 49 - 5), BigInt::from(48 * 49 * 49));
        assert_eq!(r.deviation, exact);
    }
}
