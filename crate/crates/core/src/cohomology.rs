//! The Chevalley-Eilenberg complex with trivial coefficients.
//!
//! Convention: `de^k = sum_{i<j} c_ij^k e^i ^ e^j`, so for m0 the relation `[e1,e2] = e3`
//! gives `da^2 = a^1 ^ b^1`. On products d is a graded derivation.

use crate::error::{Error, Result};
use crate::forms::{combinations, ExteriorForm, MonomialBasis};
use crate::lie::LieAlgebra;
use crate::linalg::{is_zero_vector, zero_vector, Matrix, Subspace, Vector};
use crate::scalar::{one, Scalar};
use num::Zero;

pub const MAX_PUBLIC_DEGREE: usize = 3;

pub fn d_basis_1form(g: &LieAlgebra, k: usize) -> ExteriorForm {
    let mut f = ExteriorForm::zero(g.dim(), 2);
    for ((i, j), v) in g.brackets() {
        if !v[k].is_zero() {
            f.add_term(&[*i, *j], v[k].clone());
        }
    }
    f
}

pub fn differential(g: &LieAlgebra, w: &ExteriorForm) -> ExteriorForm {
    assert_eq!(w.dim(), g.dim(), "form and algebra dimensions differ");
    let n = g.dim();
    let d1: Vec<ExteriorForm> = (0..n).map(|k| d_basis_1form(g, k)).collect();
    differential_with(&d1, w)
}

fn differential_with(d1: &[ExteriorForm], w: &ExteriorForm) -> ExteriorForm {
    let n = w.dim();
    let mut out = ExteriorForm::zero(n, w.degree() + 1);
    for (t, c) in w.terms() {
        for (pos, &k) in t.iter().enumerate() {
            if d1[k].is_zero() {
                continue;
            }
            let mut left = ExteriorForm::monomial(n, &t[..pos], c.clone());
            if pos % 2 == 1 {
                left = left.scale(&-one());
            }
            let right = ExteriorForm::monomial(n, &t[pos + 1..], one());
            out = out.add(&left.wedge(&d1[k]).wedge(&right));
        }
    }
    out
}

/// Matrix of d from the span of `src` to coordinates over `dst`.
pub fn differential_matrix(g: &LieAlgebra, src: &MonomialBasis, dst: &MonomialBasis) -> Matrix {
    let n = g.dim();
    let d1: Vec<ExteriorForm> = (0..n).map(|k| d_basis_1form(g, k)).collect();
    let cols = src
        .tuples
        .iter()
        .map(|t| differential_with(&d1, &ExteriorForm::monomial(n, t, one())).to_vector(dst))
        .collect();
    Matrix::from_cols(cols, dst.len())
}

pub fn monomials_of_weight(weights: &[usize], p: usize, lambda: usize) -> MonomialBasis {
    MonomialBasis::from_tuples(
        combinations(weights.len(), p)
            .into_iter()
            .filter(|t| t.iter().map(|&i| weights[i]).sum::<usize>() == lambda)
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub degree: usize,
    pub weight: Option<usize>,
    dim: usize,
    basis: Vec<Vec<usize>>,
    pub representatives: Vec<ExteriorForm>,
    pub boundary_space: Subspace,
    pub cocycle_space: Subspace,
    reps: Subspace,
}

impl CohomologyBasis {
    fn build(g: &LieAlgebra, p: usize, weight: Option<usize>) -> Self {
        let n = g.dim();
        let (prev, cur, next) = match weight {
            None => (
                MonomialBasis::new(n, p.wrapping_sub(1).min(n + 1)),
                MonomialBasis::new(n, p),
                MonomialBasis::new(n, p + 1),
            ),
            Some(l) => {
                let w = g.weights().expect("weighted cohomology needs a layout");
                (
                    if p == 0 { MonomialBasis::from_tuples(vec![]) } else { monomials_of_weight(w, p - 1, l) },
                    monomials_of_weight(w, p, l),
                    monomials_of_weight(w, p + 1, l),
                )
            }
        };
        let m = cur.len();
        let boundary = if p == 0 {
            Subspace::zero(m)
        } else {
            let d = differential_matrix(g, &prev, &cur);
            Subspace::span(m, d.col_vectors())
        };
        let cocycles = Subspace::span(m, differential_matrix(g, &cur, &next).kernel_basis());
        let rems: Vec<Vector> = cocycles.basis_vectors().iter().map(|z| boundary.reduce(z).1).collect();
        let reps = Subspace::span(m, rems);
        let representatives =
            reps.basis_vectors().iter().map(|v| ExteriorForm::from_vector(n, &cur, v)).collect();
        CohomologyBasis {
            degree: p,
            weight,
            dim: n,
            basis: cur.tuples,
            representatives,
            boundary_space: boundary,
            cocycle_space: cocycles,
            reps,
        }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn monomials(&self) -> MonomialBasis {
        MonomialBasis::from_tuples(self.basis.clone())
    }

    /// The form as a coordinate vector over this complex's monomials; fails if a monomial
    /// lies outside (wrong degree or weight).
    pub fn form_vector(&self, w: &ExteriorForm) -> Result<Vector> {
        if w.degree() != self.degree || w.dim() != self.dim {
            return Err(Error::Invalid("form degree or dimension does not match".into()));
        }
        let mb = self.monomials();
        let mut v = zero_vector(mb.len());
        for (t, c) in w.terms() {
            let i = mb.index_of(t).ok_or_else(|| Error::Invalid("form has the wrong weight".into()))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn is_cocycle(&self, w: &ExteriorForm) -> bool {
        self.form_vector(w).map(|v| self.cocycle_space.contains(&v)).unwrap_or(false)
    }

    pub fn is_coboundary(&self, w: &ExteriorForm) -> bool {
        self.form_vector(w).map(|v| self.boundary_space.contains(&v)).unwrap_or(false)
    }

    /// Coordinates of the class of `w` on `representatives`.
    pub fn coordinates(&self, w: &ExteriorForm) -> Result<Vector> {
        let v = self.form_vector(w)?;
        if !self.cocycle_space.contains(&v) {
            return Err(Error::NotClosed);
        }
        let rem = self.boundary_space.reduce(&v).1;
        let (c, r) = self.reps.reduce(&rem);
        debug_assert!(is_zero_vector(&r));
        Ok(c)
    }

    /// Coordinates of the class of `w` on the classes of `frame` (which must be independent).
    pub fn coordinates_in(&self, frame: &[ExteriorForm], w: &ExteriorForm) -> Result<Vector> {
        let cols = frame.iter().map(|f| self.coordinates(f)).collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_cols(cols, self.dim());
        if m.rank() != frame.len() {
            return Err(Error::Dependent);
        }
        m.solve(&self.coordinates(w)?).ok_or(Error::Inconsistent)
    }

    /// The representative with the given class coordinates.
    pub fn form_from_coordinates(&self, c: &[Scalar]) -> ExteriorForm {
        let mut f = ExteriorForm::zero(self.dim, self.degree);
        for (x, r) in c.iter().zip(&self.representatives) {
            f = f.add(&r.scale(x));
        }
        f
    }
}

pub fn cohomology(g: &LieAlgebra, p: usize) -> Result<CohomologyBasis> {
    if p > MAX_PUBLIC_DEGREE || p > g.dim() {
        return Err(Error::Invalid(format!("degree {p} outside 0..={}", MAX_PUBLIC_DEGREE.min(g.dim()))));
    }
    Ok(CohomologyBasis::build(g, p, None))
}

pub fn homogeneous_cohomology(g: &LieAlgebra, p: usize, lambda: usize) -> Result<CohomologyBasis> {
    if g.weights().is_none() {
        return Err(Error::NoLayout);
    }
    if p > MAX_PUBLIC_DEGREE || p > g.dim() {
        return Err(Error::Invalid(format!("degree {p} outside 0..={}", MAX_PUBLIC_DEGREE.min(g.dim()))));
    }
    Ok(CohomologyBasis::build(g, p, Some(lambda)))
}

/// `Some(weight)`, or `None` for inhomogeneous (or zero) forms.
pub fn weight_of_form(g: &LieAlgebra, w: &ExteriorForm) -> Result<Option<usize>> {
    let weights = g.weights().ok_or(Error::NoLayout)?;
    Ok(w.weight(weights))
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn det_small(m: Vec<Vec<Scalar>>) -> Scalar {
    let k = m.len();
    Matrix::from_rows(m, k).determinant()
}

/// Linear conditions on p-form coordinates (over `basis`) cutting out the filtered piece
/// F~^k: the form vanishes on all tuples from `g^{k_1} x ... x g^{k_p}`, `sum k_i = k + 1`.
pub fn filtration_constraints(
    g: &LieAlgebra,
    series: &[Subspace],
    basis: &MonomialBasis,
    p: usize,
    k: usize,
) -> Vec<Vector> {
    let ideal = |i: usize| -> Vec<Vector> {
        if i == 0 || i > series.len() {
            return Vec::new();
        }
        series[i - 1].basis_vectors()
    };
    let _ = g;
    let mut rows = Vec::new();
    for comp in compositions(k + 1, p) {
        let sets: Vec<Vec<Vector>> = comp.iter().map(|&i| ideal(i)).collect();
        if sets.iter().any(|s| s.is_empty()) {
            continue;
        }
        let mut choice = vec![0usize; p];
        loop {
            let vecs: Vec<&Vector> = (0..p).map(|a| &sets[a][choice[a]]).collect();
            let row: Vector = basis
                .tuples
                .iter()
                .map(|t| det_small((0..p).map(|a| t.iter().map(|&i| vecs[a][i].clone()).collect()).collect()))
                .collect();
            if !is_zero_vector(&row) {
                rows.push(row);
            }
            let mut a = 0;
            loop {
                if a == p {
                    break;
                }
                choice[a] += 1;
                if choice[a] < sets[a].len() {
                    break;
                }
                choice[a] = 0;
                a += 1;
            }
            if a == p {
                break;
            }
        }
    }
    rows
}

/// Smallest `k` with `w` in F~^k (0 for the zero form).
pub fn form_filtration(g: &LieAlgebra, w: &ExteriorForm) -> Result<usize> {
    let series = g.lower_central_series();
    if !series.last().unwrap().is_zero() {
        return Err(Error::NotNilpotent);
    }
    if w.is_zero() {
        return Ok(0);
    }
    let p = w.degree();
    let basis = MonomialBasis::new(g.dim(), p);
    let v = w.to_vector(&basis);
    let s = series.len() - 1;
    for k in p..=p * s {
        let rows = filtration_constraints(g, &series, &basis, p, k);
        if rows.iter().all(|r| crate::linalg::dot(r, &v).is_zero()) {
            return Ok(k);
        }
    }
    Ok(p * s)
}

/// No nontrivial combination of the classes lies in F~^{s-1} H^2 (the joint system over
/// coefficients and coboundary shifts has no solution with nonzero coefficients).
pub fn set_has_filtration_s(g: &LieAlgebra, cocycles: &[ExteriorForm], s: usize) -> Result<bool> {
    let n = g.dim();
    let series = g.lower_central_series();
    if !series.last().unwrap().is_zero() {
        return Err(Error::NotNilpotent);
    }
    for c in cocycles {
        if c.degree() != 2 || c.dim() != n {
            return Err(Error::Invalid("cocycles must be 2-forms on the algebra".into()));
        }
        if !differential(g, c).is_zero() {
            return Err(Error::NotClosed);
        }
    }
    if cocycles.is_empty() {
        return Ok(true);
    }
    let basis = MonomialBasis::new(n, 2);
    let rows = filtration_constraints(g, &series, &basis, 2, s.saturating_sub(1));
    let m = cocycles.len();
    let mut cols: Vec<Vector> = cocycles.iter().map(|c| c.to_vector(&basis)).collect();
    for k in 0..n {
        cols.push(d_basis_1form(g, k).to_vector(&basis));
    }
    let sys: Vec<Vector> = rows
        .iter()
        .map(|r| cols.iter().map(|c| crate::linalg::dot(r, c)).collect())
        .collect();
    if sys.is_empty() {
        // Everything lies in F~^{s-1}; only the empty combination is allowed.
        return Ok(false);
    }
    let ker = Matrix::from_rows(sys, m + n).kernel_basis();
    Ok(ker.iter().all(|v| is_zero_vector(&v[..m])))
}

/// Exterior square of a subspace of the dual, inside Lambda^2.
fn wedge_square(l: &Subspace, basis: &MonomialBasis) -> Subspace {
    let vecs = l.basis_vectors();
    let mut out = Vec::new();
    for a in 0..vecs.len() {
        for b in a + 1..vecs.len() {
            let f = ExteriorForm::from_1form(&vecs[a]).wedge(&ExteriorForm::from_1form(&vecs[b]));
            out.push(f.to_vector(basis));
        }
    }
    Subspace::span(basis.len(), out)
}

/// `L_0 = 0`, `L_i = { rho : d rho in Lambda^2(L_{i-1}) }`, up to the full dual.
pub fn dual_chain_l(g: &LieAlgebra) -> Result<Vec<Subspace>> {
    let n = g.dim();
    let basis = MonomialBasis::new(n, 2);
    let d = differential_matrix(g, &MonomialBasis::new(n, 1), &basis);
    let mut chain = vec![Subspace::zero(n)];
    loop {
        let last = chain.last().unwrap();
        if last.dim() == n {
            return Ok(chain);
        }
        let w = wedge_square(last, &basis);
        let ann = w.annihilator().basis().clone();
        let next = if ann.rows() == 0 {
            Subspace::full(n)
        } else {
            Subspace::span(n, ann.mul(&d).kernel_basis())
        };
        if &next == last {
            return Err(Error::NotNilpotent);
        }
        chain.push(next);
    }
}
