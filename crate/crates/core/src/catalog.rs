//! Named algebras and families.

use crate::error::{Error, Result};
use crate::extension::{central_extension, ExtensionSpec};
use crate::forms::ExteriorForm;
use crate::hall::HallBasis;
use crate::lie::LieAlgebra;
use crate::linalg::zero_vector;
use crate::scalar::{int, one, Scalar};
use std::collections::HashMap;

pub const DEFAULT_FREE_CAP: usize = 30;

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::abelian(n).with_weights(vec![1; n])
}

/// `m0(k)`: `[e_1, e_i] = e_{i+1}` for `2 <= i <= k`, dimension `k + 1`.
pub fn m0(k: usize) -> LieAlgebra {
    assert!(k >= 1, "m0 needs k >= 1");
    let rels: Vec<_> = (1..k).map(|i| (0, i, i + 1, one())).collect();
    let mut w = vec![1, 1];
    w.extend(2..=k);
    LieAlgebra::from_relations(k + 1, &rels).with_weights(w)
}

pub fn heisenberg() -> LieAlgebra {
    m0(2)
}

/// `m1(n)` for odd `n = 2m - 1 >= 5`, dimension `2m`.
pub fn m1(n: usize) -> LieAlgebra {
    assert!(n >= 5 && n % 2 == 1, "m1 needs odd n >= 5");
    let m = (n + 1) / 2;
    let dim = 2 * m;
    let mut rels: Vec<_> = (1..dim - 2).map(|i| (0, i, i + 1, one())).collect();
    for k in 2..=m {
        let sign = if k % 2 == 0 { -1 } else { 1 };
        rels.push((k - 1, dim - k, dim - 1, int(sign)));
    }
    let mut w = vec![1, 1];
    w.extend(2..dim);
    LieAlgebra::from_relations(dim, &rels).with_weights(w)
}

/// The algebra `m2(5)` with its positive grading `(1, ..., 6)` (not a Carnot layout).
pub fn m2_5() -> LieAlgebra {
    let rels = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (1, 2, 4), (1, 3, 5)];
    let rels: Vec<_> = rels.iter().map(|&(i, j, k)| (i, j, k, one())).collect();
    LieAlgebra::from_relations(6, &rels).with_weights((1..=6).collect())
}

fn two_generator_names(h: &HallBasis) -> Vec<String> {
    let gens = vec!["a".to_string(), "b".to_string()];
    let hall_names = ["a1", "b1", "a2", "a3", "b3"];
    (0..h.dim())
        .map(|i| if i < hall_names.len() && h.class >= 1 { hall_names[i].to_string() } else { h.name(i, &gens) })
        .collect()
}

pub fn free_nilpotent(m: usize, c: usize) -> Result<LieAlgebra> {
    free_nilpotent_with_cap(m, c, DEFAULT_FREE_CAP)
}

pub fn free_nilpotent_with_cap(m: usize, c: usize, cap: usize) -> Result<LieAlgebra> {
    if m < 2 || c < 1 {
        return Err(Error::Invalid("free_nilpotent needs m >= 2 and c >= 1".into()));
    }
    let h = HallBasis::new(m, c, cap)?;
    let n = h.dim();
    let names = if m == 2 {
        two_generator_names(&h)
    } else {
        let gens: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
        (0..n).map(|i| h.name(i, &gens)).collect()
    };
    let mut g = LieAlgebra::abelian(n).with_names(names);
    let mut memo = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let combo = h.bracket(i, j, &mut memo);
            if combo.is_empty() {
                continue;
            }
            let mut v = zero_vector(n);
            for (k, c) in combo {
                v[k] = c;
            }
            g.set_bracket(i, j, v);
        }
    }
    Ok(g.with_weights(h.elements.iter().map(|e| e.degree).collect()))
}

pub fn l_tilde_2_4() -> LieAlgebra {
    let names = ["a1", "b1", "a2", "a3", "b3", "a4", "b4"].map(String::from).to_vec();
    let rels = [(0, 1, 2), (0, 2, 3), (1, 2, 4), (0, 3, 5), (1, 4, 6)];
    let rels: Vec<_> = rels.iter().map(|&(i, j, k)| (i, j, k, one())).collect();
    LieAlgebra::from_relations(7, &rels).with_names(names).with_weights(vec![1, 1, 2, 3, 3, 4, 4])
}

fn form(g: &LieAlgebra, s: &str) -> ExteriorForm {
    ExteriorForm::parse(s, g.names(), 2).expect("catalog form")
}

/// `(Omega_7, omega_7, omega_5)` on `m2(5)`.
pub fn m25_frame() -> Vec<ExteriorForm> {
    let g = m2_5();
    vec![form(&g, "e1^e6 + e2^e5"), form(&g, "e2^e5 - e3^e4"), form(&g, "e2^e3")]
}

/// `(a1^a3, a1^b3 + b1^a3, b1^b3)` on `L(2,3)`.
pub fn l23_frame() -> Vec<ExteriorForm> {
    let g = free_nilpotent(2, 3).expect("small");
    vec![form(&g, "a1^a3"), form(&g, "a1^b3 + b1^a3"), form(&g, "b1^b3")]
}

/// The weight-5 classes `h1..h4` on `L~(2,4)`.
pub fn ltilde24_h5_frame() -> Vec<ExteriorForm> {
    let g = l_tilde_2_4();
    vec![
        form(&g, "a1^a4"),
        form(&g, "a1^b4 + a2^b3"),
        form(&g, "b1^a4 - a2^a3"),
        form(&g, "b1^b4"),
    ]
}

fn combine(frame: &[ExteriorForm], coords: &[Scalar]) -> ExteriorForm {
    let mut f = ExteriorForm::zero(frame[0].dim(), 2);
    for (x, w) in coords.iter().zip(frame) {
        f = f.add(&w.scale(x));
    }
    f
}

pub fn family_g7(t: &Scalar) -> LieAlgebra {
    let fr = m25_frame();
    let c = combine(&fr, &[one(), t.clone(), int(0)]);
    central_extension(&ExtensionSpec::new(m2_5(), vec![c])).expect("closed").algebra
}

fn ltilde_extension(coords: [Scalar; 4]) -> LieAlgebra {
    let c = combine(&ltilde24_h5_frame(), &coords);
    let spec = ExtensionSpec::new(l_tilde_2_4(), vec![c]).with_names(vec!["c5".into()]);
    central_extension(&spec).expect("closed").algebra
}

/// Extension of `L~(2,4)` by the weight-5 class `(t : 0 : 1 : 1)`.
pub fn family_lt(t: &Scalar) -> LieAlgebra {
    ltilde_extension([t.clone(), int(0), one(), one()])
}

/// Extension of `L~(2,4)` by the weight-5 class `(0 : tau : 1 : 0)`.
pub fn family_ltilde(tau: &Scalar) -> LieAlgebra {
    ltilde_extension([int(0), tau.clone(), one(), int(0)])
}

/// The printed cocycle `c_{2q+1} = -b^1^a^{2q} + sum_{i=2}^{q} (-1)^i a^i^a^{2q+1-i}` on `m0(n)`
/// (`a^1 = e^1`, `b^1 = e^2`, `a^i = e^{i+1}`).
pub fn m0_printed_cocycle(n: usize, q: usize) -> ExteriorForm {
    let a = |i: usize| if i == 1 { 0 } else { i };
    let mut f = ExteriorForm::monomial(n + 1, &[1, a(2 * q)], -one());
    for i in 2..=q {
        let s = if i % 2 == 0 { one() } else { -one() };
        f.add_term(&[a(i), a(2 * q + 1 - i)], s);
    }
    f
}

/// Parses catalog names such as `m0:4`, `m1:5`, `m2_5`, `free:2:3`, `ltilde24`, `h3`,
/// `abelian:3`, `g7:t=1/2`, `Lt:t=0`, `Ltau:tau=1`.
pub fn by_name(name: &str) -> Result<LieAlgebra> {
    let bad = || Error::Invalid(format!("unknown catalog name `{name}`"));
    let num = |s: &str| -> Result<usize> { s.parse().map_err(|_| bad()) };
    let param = |s: &str, key: &str| -> Result<Scalar> {
        let v = s.strip_prefix(key).and_then(|r| r.strip_prefix('=')).ok_or_else(bad)?;
        crate::scalar::parse(v).ok_or_else(bad)
    };
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["m0", k] => {
            let k = num(k)?;
            if k == 0 {
                return Err(bad());
            }
            Ok(m0(k))
        }
        ["m1", n] => {
            let n = num(n)?;
            if n < 5 || n % 2 == 0 {
                return Err(bad());
            }
            Ok(m1(n))
        }
        ["m2_5"] => Ok(m2_5()),
        ["h3"] => Ok(heisenberg()),
        ["abelian", n] => Ok(abelian(num(n)?)),
        ["free", m, c] => free_nilpotent(num(m)?, num(c)?),
        ["ltilde24"] => Ok(l_tilde_2_4()),
        ["g7", p] => Ok(family_g7(&param(p, "t")?)),
        ["Lt", p] => Ok(family_lt(&param(p, "t")?)),
        ["Ltau", p] => Ok(family_ltilde(&param(p, "tau")?)),
        _ => Err(bad()),
    }
}

pub const CATALOG_NAMES: &[&str] =
    &["m0:4", "m1:5", "m2_5", "h3", "abelian:3", "free:2:3", "ltilde24", "g7:t=1/2", "Lt:t=0", "Ltau:tau=1"];
