//! Named small strict n-categories and a tiny expression language for them.
//!
//! ```text
//! expr ::= name | name "(" arg ("," arg)* ")"
//! arg  ::= nat | expr | Θ-term
//! ```
//!
//! Names: `walking_iso`, `walking_idempotent`, `walking_retraction`,
//! `terminal`, `empty`, `interval`, `discrete(k)`, `cyclic(m)`,
//! `double_delooping(m)`, `cell(k)`, `boundary(k)`, `theta(T)`,
//! `suspend(e)`, `product(e, e)`. A single numeric argument may be glued
//! on: `discrete2` is `discrete(2)`.

use super::build::{boundary_cell, discrete, level1, pad_to_level, product, suspend};
use super::cat::StrictNCat;
use super::cat::Dim;
use super::theta_cat::from_theta;
use crate::error::{Error, Result};
use crate::theta::{parse_obj, ThetaObj};

/// Two objects and an inverse pair `f : a → b`, `g : b → a`.
pub fn walking_iso(n: usize) -> StrictNCat {
    // 0 = id_a, 1 = id_b, 2 = f, 3 = g
    let c = level1(&["a", "b"], &[(0, 0), (1, 1), (0, 1), (1, 0)], &[0, 1], |x, y| match (x, y) {
        (0, y) | (1, y) => y,
        (x, 0) | (x, 1) => x,
        (2, 3) => 1,
        (3, 2) => 0,
        _ => unreachable!(),
    })
    .unwrap();
    pad_to_level(&c, n).unwrap()
}

/// One object with an idempotent `e ∘ e = e`.
pub fn walking_idempotent(n: usize) -> StrictNCat {
    let c = level1(&["x"], &[(0, 0), (0, 0)], &[0], |x, y| x.max(y)).unwrap();
    pad_to_level(&c, n).unwrap()
}

/// `s : a → b`, `r : b → a` with `r ∘ s = id_a`; `e = s ∘ r` is idempotent.
pub fn walking_retraction(n: usize) -> StrictNCat {
    // 0 = id_a, 1 = id_b, 2 = s, 3 = r, 4 = e
    let c = level1(&["a", "b"], &[(0, 0), (1, 1), (0, 1), (1, 0), (1, 1)], &[0, 1], |x, y| match (x, y) {
        (0, y) | (1, y) => y,
        (x, 0) | (x, 1) => x,
        (2, 3) => 4,
        (3, 2) => 0,
        (3, 4) => 3,
        (4, 2) => 2,
        (4, 4) => 4,
        _ => unreachable!(),
    })
    .unwrap();
    pad_to_level(&c, n).unwrap()
}

/// `Z/m` as a one-object groupoid.
pub fn cyclic(m: usize, n: usize) -> StrictNCat {
    assert!(m >= 1);
    let arrows = vec![(0, 0); m];
    let c = level1(&["*"], &arrows, &[0], |x, y| (x + y) % m).unwrap();
    pad_to_level(&c, n).unwrap()
}

/// One object, one 1-cell, and `Z/m` worth of 2-cells.
pub fn double_delooping(m: usize, n: usize) -> StrictNCat {
    assert!(m >= 1 && n >= 2);
    let d0 = Dim { count: 1, ident: vec![0], ..Default::default() };
    let d1 = Dim { count: 1, src: vec![0], tgt: vec![0], ident: vec![0], comp: vec![[((0, 0), 0)].into_iter().collect()] };
    let table: std::collections::HashMap<_, _> = (0..m).flat_map(|x| (0..m).map(move |y| ((x, y), (x + y) % m))).collect();
    let d2 = Dim { count: m, src: vec![0; m], tgt: vec![0; m], ident: Vec::new(), comp: vec![table.clone(), table] };
    let c = StrictNCat::from_dims(2, vec!["*".into()], vec![d0, d1, d2]).unwrap();
    pad_to_level(&c, n).unwrap()
}

/// The finite categories used as test subjects, at level `n`.
pub fn finite_catalog(n: usize) -> Vec<(String, StrictNCat)> {
    let mut out = vec![
        ("walking_iso".to_string(), walking_iso(n)),
        ("interval".to_string(), from_theta(&ThetaObj::cell(1, n))),
        ("walking_retraction".to_string(), walking_retraction(n)),
        ("walking_idempotent".to_string(), walking_idempotent(n)),
    ];
    for k in 0..=3 {
        out.push((format!("discrete({k})"), discrete(k, n)));
    }
    out
}

/// Strict n-groupoids used as test subjects, at level `n`.
pub fn groupoid_catalog(n: usize) -> Vec<(String, StrictNCat)> {
    let mut out = vec![("terminal".to_string(), discrete(1, n)), ("walking_iso".to_string(), walking_iso(n))];
    out.push(("discrete(2)".to_string(), discrete(2, n)));
    out.push(("cyclic(2)".to_string(), cyclic(2, n)));
    out.push(("cyclic(3)".to_string(), cyclic(3, n)));
    out
}

/// Evaluates a catalog expression and pads it to level `n`.
pub fn catalog(expr: &str, n: usize) -> Result<StrictNCat> {
    let c = eval(expr.trim())?;
    pad_to_level(&c, n)
}

/// Evaluates a catalog expression at its natural level.
pub fn eval(expr: &str) -> Result<StrictNCat> {
    let unknown = || Error::UnknownCatalog(expr.to_string());
    let (name, args) = match expr.find('(') {
        Some(i) if expr.ends_with(')') => (expr[..i].trim(), split_args(&expr[i + 1..expr.len() - 1])),
        Some(_) => return Err(unknown()),
        None => match expr.find(|c: char| c.is_ascii_digit()) {
            Some(i) if i > 0 && expr[i..].chars().all(|c| c.is_ascii_digit()) => (&expr[..i], vec![expr[i..].to_string()]),
            _ => (expr, Vec::new()),
        },
    };
    let nat = |i: usize| -> Result<usize> { args.get(i).and_then(|a| a.parse().ok()).ok_or_else(unknown) };
    let arity = |k: usize| if args.len() == k { Ok(()) } else { Err(unknown()) };
    Ok(match name {
        "walking_iso" => arity(0).map(|_| walking_iso(1))?,
        "walking_idempotent" => arity(0).map(|_| walking_idempotent(1))?,
        "walking_retraction" => arity(0).map(|_| walking_retraction(1))?,
        "terminal" => arity(0).map(|_| discrete(1, 0))?,
        "empty" => arity(0).map(|_| discrete(0, 0))?,
        "interval" => arity(0).map(|_| from_theta(&ThetaObj::cell(1, 1)))?,
        "discrete" => {
            arity(1)?;
            discrete(nat(0)?, 0)
        }
        "cyclic" => {
            arity(1)?;
            let m = nat(0)?;
            if m == 0 {
                return Err(unknown());
            }
            cyclic(m, 1)
        }
        "double_delooping" => {
            arity(1)?;
            let m = nat(0)?;
            if m == 0 {
                return Err(unknown());
            }
            double_delooping(m, 2)
        }
        "cell" => {
            arity(1)?;
            let k = nat(0)?;
            from_theta(&ThetaObj::cell(k, k))
        }
        "boundary" => {
            arity(1)?;
            let k = nat(0)?;
            boundary_cell(k, k.saturating_sub(1))?
        }
        "theta" => {
            arity(1)?;
            let t = parse_obj(&args[0])?;
            from_theta(&t)
        }
        "suspend" => {
            arity(1)?;
            suspend(&eval(&args[0])?)
        }
        "product" => {
            arity(2)?;
            let (a, b) = (eval(&args[0])?, eval(&args[1])?);
            let n = a.level().max(b.level());
            product(&pad_to_level(&a, n)?, &pad_to_level(&b, n)?)?
        }
        _ => return Err(unknown()),
    })
}

/// Splits on top-level commas, respecting both kinds of brackets.
fn split_args(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strict::functor::count_functors;
    use crate::strict::props::{is_isomorphic, is_strict_groupoid};

    #[test]
    fn entries_are_lawful() {
        for n in 1..=3 {
            for (name, c) in finite_catalog(n).into_iter().chain(groupoid_catalog(n)) {
                assert!(c.law_violations().is_empty(), "{name} at level {n}");
            }
            for (name, g) in groupoid_catalog(n) {
                assert!(is_strict_groupoid(&g), "{name}");
            }
        }
        let bb = double_delooping(3, 2);
        assert!(bb.law_violations().is_empty());
        assert!(is_strict_groupoid(&bb));
    }

    #[test]
    fn iso_into_gaunt_arrow_is_constant() {
        let c1 = from_theta(&ThetaObj::cell(1, 1));
        assert_eq!(count_functors(&walking_iso(1), &c1).unwrap(), 2);
        assert_eq!(count_functors(&c1, &c1).unwrap(), 3);
    }

    #[test]
    fn expressions() {
        assert!(is_isomorphic(&catalog("suspend(terminal)", 1).unwrap(), &from_theta(&ThetaObj::cell(1, 1))));
        assert!(is_isomorphic(&catalog("suspend(discrete(2))", 1).unwrap(), &catalog("boundary(2)", 1).unwrap()));
        assert_eq!(catalog("product(interval, walking_iso)", 2).unwrap().object_count(), 4);
        assert_eq!(catalog("theta([2]([1]([0]),[0]))", 2).unwrap().object_count(), 3);
        assert!(matches!(catalog("walking_isomorphism", 1), Err(Error::UnknownCatalog(_))));
        assert_eq!(catalog("discrete2", 1).unwrap(), catalog("discrete(2)", 1).unwrap());
        assert!(catalog("walking_iso2", 1).is_err());
        assert!(catalog("suspend(walking_iso)", 1).is_err());
    }
}
