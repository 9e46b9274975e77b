//! `eval` expressions: jacobi A B | binom A B | hyper3f2 a0 a1 a2 b1 b2 lambda |
//! vsum KIND i1 i2 i3 | kformula m | uv.

use peisert_core::charsum::{
    binom, hyper3f2_exact, hyper3f2_float, jacobi_sum, vsum, HyperParams, MultChar, VsumKind,
};
use peisert_core::cyclo::Cyclo8;
use peisert_core::ffield::FieldCtx;
use peisert_core::peisert::{k3_formula, k4_formula, uv_solve};

use crate::output::sig10;

/// (exact rendering, float rendering).
pub type Value = (String, String);

pub fn parse_char(s: &str) -> Result<MultChar, String> {
    match s {
        "eps" | "epsilon" => Ok(MultChar::EPSILON),
        "chi4" => Ok(MultChar::CHI4),
        "chi4bar" | "chi4^3" => Ok(MultChar::CHI4_BAR),
        "phi" => Ok(MultChar::PHI),
        "chi8" => Ok(MultChar::CHI8),
        _ => {
            if let Some(k) = s.strip_prefix("chi8^") {
                return k
                    .parse::<i64>()
                    .map(MultChar::new)
                    .map_err(|_| format!("bad character {s:?}"));
            }
            s.parse::<i64>()
                .map(MultChar::new)
                .map_err(|_| format!("bad character {s:?}"))
        }
    }
}

pub fn parse_kind(s: &str) -> Result<VsumKind, String> {
    let fixed = [
        VsumKind::None,
        VsumKind::Chi4X,
        VsumKind::Chi4BarX,
        VsumKind::Chi4OneMinusX,
        VsumKind::Chi4BarOneMinusX,
    ];
    if let Some(k) = fixed.into_iter().find(|k| k.to_string() == s) {
        return Ok(k);
    }
    let inner = s
        .strip_prefix("pair(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("bad vsum kind {s:?}"))?;
    let parts: Vec<i8> = inner
        .split(',')
        .map(|x| x.trim().parse::<i8>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("bad vsum kind {s:?}"))?;
    match parts.as_slice() {
        [a, b] => Ok(VsumKind::Pair(*a, *b)),
        _ => Err(format!("bad vsum kind {s:?}")),
    }
}

fn sign(s: &str) -> Result<i8, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("sign must be 1 or -1, got {s:?}")),
    }
}

fn render(c: &Cyclo8) -> Value {
    let z = c.approx();
    let approx = if z.im.abs() < 1e-12 {
        sig10(z.re)
    } else {
        format!(
            "{}{}{}i",
            sig10(z.re),
            if z.im < 0.0 { "-" } else { "+" },
            sig10(z.im.abs())
        )
    };
    (c.to_string(), approx)
}

fn arity(args: &[String], n: usize) -> Result<(), String> {
    if args.len() == n + 1 {
        Ok(())
    } else {
        Err(format!(
            "{} expects {n} argument(s), got {}",
            args[0],
            args.len() - 1
        ))
    }
}

pub fn evaluate(ctx: &FieldCtx, args: &[String]) -> Result<Value, String> {
    let head = args.first().ok_or("empty expression")?;
    match head.as_str() {
        "jacobi" | "binom" => {
            arity(args, 2)?;
            let a = parse_char(&args[1])?;
            let b = parse_char(&args[2])?;
            let v = if head == "jacobi" {
                jacobi_sum(ctx, a, b)
            } else {
                binom(ctx, a, b)
            };
            Ok(render(&v))
        }
        "hyper3f2" => {
            arity(args, 6)?;
            let c: Vec<MultChar> = args[1..6]
                .iter()
                .map(|s| parse_char(s))
                .collect::<Result<_, _>>()?;
            let lam: u64 = args[6]
                .parse()
                .map_err(|_| format!("bad lambda {:?}", args[6]))?;
            let lam = ctx.element(lam).map_err(|e| e.to_string())?;
            let params = HyperParams::new(c[0], c[1], c[2], c[3], c[4]);
            match hyper3f2_exact(ctx, &params, lam) {
                Ok(v) => Ok(render(&v)),
                Err(_) => {
                    let z =
                        hyper3f2_float(ctx, params.as_array().map(|x| x.to_general(ctx.q())), lam);
                    Ok(("n/a".into(), format!("{}{:+}i", sig10(z.re), z.im)))
                }
            }
        }
        "vsum" => {
            arity(args, 4)?;
            let kind = parse_kind(&args[1])?;
            let signs = [sign(&args[2])?, sign(&args[3])?, sign(&args[4])?];
            Ok(render(&vsum(ctx, kind, signs)))
        }
        "kformula" => {
            arity(args, 1)?;
            match args[1].as_str() {
                "3" => {
                    let k = k3_formula(ctx.q()).map_err(|e| e.to_string())?;
                    Ok((k.to_string(), sig10(k as f64)))
                }
                "4" => {
                    let t = k4_formula(ctx).map_err(|e| e.to_string())?;
                    Ok((t.k4.to_string(), sig10(t.k4 as f64)))
                }
                m => Err(format!("no closed form for m = {m}")),
            }
        }
        "uv" => {
            arity(args, 0)?;
            let uv = uv_solve(ctx.prime_power()).map_err(|e| e.to_string())?;
            let s = format!("u={} v={}", uv.u, uv.v);
            Ok((s.clone(), s))
        }
        other => Err(format!("unknown expression {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use peisert_core::ffield::build_field;

    fn ev(q: (u64, u32), s: &str) -> Result<Value, String> {
        let f = build_field(q.0, q.1).unwrap();
        let args: Vec<String> = s.split_whitespace().map(String::from).collect();
        evaluate(&f, &args)
    }

    #[test]
    fn documented_examples() {
        assert_eq!(ev((3, 1), "jacobi chi4 chi4").unwrap().0, "3");
        assert_eq!(ev((3, 1), "hyper3f2 2 2 6 0 0 1").unwrap().0, "10/81");
        assert_eq!(ev((7, 1), "uv").unwrap().0, "u=7 v=0");
        assert_eq!(ev((3, 1), "vsum chi4(1-x) 1 -1 1").unwrap().0, "6");
        assert_eq!(ev((7, 1), "kformula 4").unwrap().0, "2156");
    }

    #[test]
    fn parsing_errors() {
        assert!(ev((3, 1), "jacobi chi4").is_err());
        assert!(ev((3, 1), "jacobi chi5 chi4").is_err());
        assert!(ev((3, 1), "vsum bogus 1 1 1").is_err());
        assert!(ev((3, 1), "kformula 5").is_err());
        assert!(ev((3, 1), "frobnicate").is_err());
        assert!(ev((3, 1), "hyper3f2 2 2 6 0 0 99").is_err());
    }

    #[test]
    fn kinds_and_characters() {
        assert_eq!(parse_kind("pair(1,-1)").unwrap(), VsumKind::Pair(1, -1));
        assert_eq!(parse_kind("chi4bar(x)").unwrap(), VsumKind::Chi4BarX);
        assert_eq!(parse_char("chi8^3").unwrap(), MultChar::new(3));
        assert_eq!(parse_char("6").unwrap(), MultChar::CHI4_BAR);
    }

    #[test]
    fn odd_parameters_fall_back_to_float() {
        let (exact, approx) = ev((3, 1), "hyper3f2 1 2 6 0 0 1").unwrap();
        assert_eq!(exact, "n/a");
        assert!(!approx.is_empty());
    }
}
