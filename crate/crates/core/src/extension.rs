//! Central extensions by closed 2-forms, and recovering them from an algebra.

use crate::cohomology::{differential, set_has_filtration_s};
use crate::error::{Error, Result};
use crate::forms::ExteriorForm;
use crate::lie::{default_names, LieAlgebra};
use crate::linalg::{zero_vector, Matrix, Subspace, Vector};
use crate::scalar::one;
use num::Zero;

#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub base: LieAlgebra,
    pub cocycles: Vec<ExteriorForm>,
    pub new_names: Vec<String>,
}

impl ExtensionSpec {
    pub fn new(base: LieAlgebra, cocycles: Vec<ExteriorForm>) -> Self {
        let n = base.dim();
        let m = cocycles.len();
        let new_names = if base.names() == default_names(n).as_slice() {
            (n + 1..=n + m).map(|i| format!("e{i}")).collect()
        } else {
            (1..=m).map(|i| format!("z{i}")).collect()
        };
        ExtensionSpec { base, cocycles, new_names }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.cocycles.len());
        self.new_names = names;
        self
    }
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub algebra: LieAlgebra,
    /// `V -> g~`, columns are the new central vectors.
    pub embedding: Matrix,
    /// `g~ -> g`.
    pub projection: Matrix,
}

/// `[x, y]~ = [x, y] + sum_l c_l(x, y) v_l`, new vectors appended after the base basis.
pub fn central_extension(spec: &ExtensionSpec) -> Result<Extension> {
    let g = &spec.base;
    let n = g.dim();
    let m = spec.cocycles.len();
    for c in &spec.cocycles {
        if c.degree() != 2 || c.dim() != n {
            return Err(Error::Invalid("cocycles must be 2-forms on the base".into()));
        }
        if !differential(g, c).is_zero() {
            return Err(Error::NotClosed);
        }
    }
    let mut names = g.names().to_vec();
    names.extend(spec.new_names.iter().cloned());
    let mut out = LieAlgebra::abelian(n + m).with_names(names);
    for i in 0..n {
        for j in i + 1..n {
            let mut v = g.bracket_basis(i, j);
            v.extend(spec.cocycles.iter().map(|c| c.coefficient(&[i, j])));
            out.set_bracket(i, j, v);
        }
    }
    if let Some(w) = g.weights() {
        let ws: Option<Vec<usize>> = spec.cocycles.iter().map(|c| c.weight(w)).collect();
        if let Some(ws) = ws {
            let mut all = w.to_vec();
            all.extend(ws);
            let cand = out.clone().with_weights(all);
            if cand.layout_is_grading() {
                out = cand;
            }
        }
    }
    if !out.check_jacobi().is_empty() {
        return Err(Error::NotClosed);
    }
    let mut embedding = Matrix::zeros(n + m, m);
    for l in 0..m {
        embedding[(n + l, l)] = one();
    }
    let mut projection = Matrix::zeros(n, n + m);
    for i in 0..n {
        projection[(i, i)] = one();
    }
    Ok(Extension { algebra: out, embedding, projection })
}

pub fn extend(base: &LieAlgebra, cocycles: &[ExteriorForm]) -> Result<LieAlgebra> {
    Ok(central_extension(&ExtensionSpec::new(base.clone(), cocycles.to_vec()))?.algebra)
}

/// Replaces `c_l` by `c_l + d mu_l` and returns the isomorphism `Id + mu` from the old
/// extension to the new one.
pub fn shift_by_coboundary(spec: &ExtensionSpec, mu: &[Vector]) -> Result<(ExtensionSpec, Matrix)> {
    let n = spec.base.dim();
    let m = spec.cocycles.len();
    if mu.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: mu.len() });
    }
    let mut shifted = spec.clone();
    for (c, u) in shifted.cocycles.iter_mut().zip(mu) {
        if u.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: u.len() });
        }
        *c = c.add(&differential(&spec.base, &ExteriorForm::from_1form(u)));
    }
    let mut f = Matrix::identity(n + m);
    for (l, u) in mu.iter().enumerate() {
        for i in 0..n {
            f[(n + l, i)] = u[i].clone();
        }
    }
    let a = central_extension(spec)?.algebra;
    let b = central_extension(&shifted)?.algebra;
    if !a.is_isomorphism_to(&b, &f) {
        return Err(Error::Inconsistent);
    }
    Ok((shifted, f))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub s: usize,
    pub has_filtration_s: bool,
    pub nil_index: Option<usize>,
    pub ideal_dim: usize,
    pub nil_index_ok: bool,
    pub ideal_dim_ok: bool,
    /// Both directions of the criterion agree with the computed extension.
    pub consistent: bool,
}

/// Builds the extension of `g` (nil-index `s - 1`) and checks it against the filtration-s
/// criterion in both directions.
pub fn verify_extension_theorem(g: &LieAlgebra, cocycles: &[ExteriorForm]) -> Result<TheoremCheck> {
    let s = g.nil_index().ok_or(Error::NotNilpotent)? + 1;
    let has = set_has_filtration_s(g, cocycles, s)?;
    let ext = extend(g, cocycles)?;
    let series = ext.lower_central_series();
    let nil = ext.nil_index();
    let ideal_dim = series.get(s - 1).map_or(0, |x| x.dim());
    let nil_index_ok = nil == Some(s);
    let ideal_dim_ok = ideal_dim == cocycles.len();
    Ok(TheoremCheck {
        s,
        has_filtration_s: has,
        nil_index: nil,
        ideal_dim,
        nil_index_ok,
        ideal_dim_ok,
        consistent: (nil_index_ok && ideal_dim_ok) == has,
    })
}

#[derive(Clone, Debug)]
pub struct Roundtrip {
    pub base: LieAlgebra,
    pub cocycles: Vec<ExteriorForm>,
    /// Columns: the adapted basis of the input (complement coordinates, then the ideal basis).
    pub basis: Matrix,
}

/// Splits off the last nonzero term of the lower central series.
pub fn roundtrip(g: &LieAlgebra) -> Result<Roundtrip> {
    if g.is_abelian() {
        return Err(Error::Abelian);
    }
    let series = g.lower_central_series();
    if !series.last().unwrap().is_zero() {
        return Err(Error::NotNilpotent);
    }
    let ideal: Subspace = series[series.len() - 2].clone();
    let (base, _) = g.quotient(&ideal)?;
    let keep = ideal.non_pivots();
    let n = g.dim();
    let m = ideal.dim();
    let mut cocycles = vec![ExteriorForm::zero(keep.len(), 2); m];
    for p in 0..keep.len() {
        for q in p + 1..keep.len() {
            let w = g.bracket_basis(keep[p], keep[q]);
            for (l, &piv) in ideal.pivots().iter().enumerate() {
                if !w[piv].is_zero() {
                    cocycles[l].add_term(&[p, q], w[piv].clone());
                }
            }
        }
    }
    let mut cols: Vec<Vector> = keep
        .iter()
        .map(|&k| {
            let mut v = zero_vector(n);
            v[k] = one();
            v
        })
        .collect();
    cols.extend(ideal.basis_vectors());
    Ok(Roundtrip { base, cocycles, basis: Matrix::from_cols(cols, n) })
}
