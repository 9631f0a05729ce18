//! Lie algebras by structure constants, and the lower-central-series machinery.

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vector, unit_vector, zero_vector, Matrix, Subspace, Vector};
use crate::scalar::{int, Scalar};
use num::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    /// `[e_i, e_j]` for `i < j`; absent pairs bracket to zero.
    brackets: BTreeMap<(usize, usize), Vector>,
    weights: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CarnotCheck {
    Yes,
    /// `[g_1, g_i] != g_{i+1}` first fails at this `i`.
    No(usize),
}

pub fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, names: default_names(dim), brackets: BTreeMap::new(), weights: None }
    }

    /// Builds from 0-based relations `(i, j, k, c)` meaning `[e_i, e_j] += c e_k`.
    pub fn from_relations(dim: usize, rels: &[(usize, usize, usize, Scalar)]) -> Self {
        let mut g = Self::abelian(dim);
        for (i, j, k, c) in rels {
            g.add_relation(*i, *j, *k, c.clone());
        }
        g
    }

    pub fn add_relation(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        assert!(i != j && i < self.dim && j < self.dim && k < self.dim, "bad relation");
        let (a, b, c) = if i < j { (i, j, c) } else { (j, i, -c) };
        let n = self.dim;
        let v = self.brackets.entry((a, b)).or_insert_with(|| zero_vector(n));
        v[k] += c;
        if is_zero_vector(v) {
            self.brackets.remove(&(a, b));
        }
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vector) {
        assert_eq!(v.len(), self.dim);
        assert!(i < j, "set_bracket expects i < j");
        if is_zero_vector(&v) {
            self.brackets.remove(&(i, j));
        } else {
            self.brackets.insert((i, j), v);
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim);
        self.names = names;
        self
    }

    /// Attaches a layout without checking it; see [`LieAlgebra::layout_is_grading`].
    pub fn with_weights(mut self, weights: Vec<usize>) -> Self {
        assert_eq!(weights.len(), self.dim);
        self.weights = Some(weights);
        self
    }

    pub fn without_weights(mut self) -> Self {
        self.weights = None;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> Option<&[usize]> {
        self.weights.as_deref()
    }

    pub fn brackets(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.brackets
    }

    /// Same dimension and structure constants; names and layout ignored.
    pub fn same_structure(&self, other: &LieAlgebra) -> bool {
        self.dim == other.dim && self.brackets == other.brackets
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_else(|| zero_vector(self.dim))
        } else if i > j {
            match self.brackets.get(&(j, i)) {
                Some(v) => v.iter().map(|x| -x).collect(),
                None => zero_vector(self.dim),
            }
        } else {
            zero_vector(self.dim)
        }
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
            }
        }
        let mut out = zero_vector(self.dim);
        for ((i, j), c) in &self.brackets {
            let coef = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            axpy(&mut out, &coef, c);
        }
        Ok(out)
    }

    /// `[e_i, v]`.
    pub fn bracket_with_basis(&self, i: usize, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &self.bracket_basis(i, k));
            }
        }
        out
    }

    /// Matrix of `ad e_i` (columns are images of basis vectors).
    pub fn ad(&self, i: usize) -> Matrix {
        let cols = (0..self.dim).map(|k| self.bracket_basis(i, k)).collect();
        Matrix::from_cols(cols, self.dim)
    }

    /// Basis triples (0-based, `i < j < k`) on which the Jacobi identity fails.
    pub fn check_jacobi(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut s = self.bracket_with_basis(i, &self.bracket_basis(j, k));
                    let t = self.bracket_with_basis(j, &self.bracket_basis(k, i));
                    let u = self.bracket_with_basis(k, &self.bracket_basis(i, j));
                    axpy(&mut s, &int(1), &t);
                    axpy(&mut s, &int(1), &u);
                    if !is_zero_vector(&s) {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    /// Every nonzero `c_ij^k` satisfies `w(k) = w(i) + w(j)`.
    pub fn layout_is_grading(&self) -> bool {
        let Some(w) = &self.weights else { return false };
        self.brackets
            .iter()
            .all(|((i, j), v)| v.iter().enumerate().all(|(k, c)| c.is_zero() || w[k] == w[*i] + w[*j]))
    }

    /// `g^1 = g, g^{k+1} = [g, g^k]`; ends with the zero subspace, or with the stable ideal
    /// when the algebra is not nilpotent.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let last = series.last().unwrap();
            if last.is_zero() {
                break;
            }
            let mut vecs = Vec::new();
            for b in last.basis_vectors() {
                for i in 0..self.dim {
                    let v = self.bracket_with_basis(i, &b);
                    if !is_zero_vector(&v) {
                        vecs.push(v);
                    }
                }
            }
            let next = Subspace::span(self.dim, vecs);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    /// `None` when not nilpotent. The zero algebra has nil-index 0.
    pub fn nil_index(&self) -> Option<usize> {
        let s = self.lower_central_series();
        s.last().unwrap().is_zero().then(|| s.len() - 1)
    }

    pub fn is_filiform(&self) -> bool {
        self.dim >= 2 && self.nil_index() == Some(self.dim - 1)
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let mut rows = Vec::new();
        for j in 0..n {
            // sum_i x_i [e_i, e_j] = 0
            let cols: Vec<Vector> = (0..n).map(|i| self.bracket_basis(i, j)).collect();
            for k in 0..n {
                let row: Vector = cols.iter().map(|c| c[k].clone()).collect();
                if !is_zero_vector(&row) {
                    rows.push(row);
                }
            }
        }
        Subspace::span(n, Matrix::from_rows(rows, n).kernel_basis())
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis_vectors()
            .iter()
            .all(|b| (0..self.dim).all(|i| s.contains(&self.bracket_with_basis(i, b))))
    }

    /// Quotient in the basis of non-pivot coordinates of the ideal; also returns the
    /// projection matrix.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, Matrix)> {
        if ideal.ambient() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: ideal.ambient() });
        }
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let keep = ideal.non_pivots();
        let m = keep.len();
        let mut q = LieAlgebra::abelian(m)
            .with_names(keep.iter().map(|&k| self.names[k].clone()).collect());
        for p in 0..m {
            for r in p + 1..m {
                let v = self.bracket_basis(keep[p], keep[r]);
                q.set_bracket(p, r, ideal.quotient_coordinates(&v));
            }
        }
        if let Some(w) = &self.weights {
            let cand = q.clone().with_weights(keep.iter().map(|&k| w[k]).collect());
            if cand.layout_is_grading() {
                q = cand;
            }
        }
        let proj = Matrix::from_cols(
            (0..self.dim).map(|i| ideal.quotient_coordinates(&unit_vector(self.dim, i))).collect(),
            m,
        );
        Ok((q, proj))
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut g = LieAlgebra::abelian(n).with_names(names);
        for ((i, j), v) in &self.brackets {
            let mut w = v.clone();
            w.extend(zero_vector(other.dim));
            g.set_bracket(*i, *j, w);
        }
        for ((i, j), v) in &other.brackets {
            let mut w = zero_vector(self.dim);
            w.extend(v.iter().cloned());
            g.set_bracket(self.dim + i, self.dim + j, w);
        }
        if let (Some(a), Some(b)) = (&self.weights, &other.weights) {
            let mut w = a.clone();
            w.extend(b.iter().cloned());
            g.weights = Some(w);
        }
        g
    }

    /// The same algebra in the basis given by the columns of `p` (which must be invertible).
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        let inv = p.inverse().ok_or(Error::Singular)?;
        let n = self.dim;
        let cols = p.col_vectors();
        let mut g = LieAlgebra::abelian(n);
        for a in 0..n {
            for b in a + 1..n {
                let v = self.bracket(&cols[a], &cols[b])?;
                g.set_bracket(a, b, inv.mul_vec(&v));
            }
        }
        Ok(g)
    }

    /// `[g_1, g_i] = g_{i+1}` for every `i`.
    pub fn is_carnot_layout(&self) -> Result<CarnotCheck> {
        let w = self.weights.as_ref().ok_or(Error::NoLayout)?;
        if !self.layout_is_grading() {
            return Err(Error::Invalid("layout is not a grading".into()));
        }
        let n = self.dim;
        let top = w.iter().copied().max().unwrap_or(0);
        let block = |k: usize| -> Vec<usize> { (0..n).filter(|&i| w[i] == k).collect() };
        if top > 0 && block(1).is_empty() {
            return Ok(CarnotCheck::No(0));
        }
        for i in 1..top {
            let mut vecs = Vec::new();
            for &a in &block(1) {
                for &b in &block(i) {
                    vecs.push(self.bracket_basis(a, b));
                }
            }
            let got = Subspace::span(n, vecs);
            let want = Subspace::span(n, block(i + 1).iter().map(|&k| unit_vector(n, k)).collect());
            if got != want {
                return Ok(CarnotCheck::No(i));
            }
        }
        Ok(CarnotCheck::Yes)
    }

    pub fn is_carnot(&self) -> bool {
        matches!(self.is_carnot_layout(), Ok(CarnotCheck::Yes))
    }

    /// A basis adapted to the lower central series, as matrix columns, with the depth of each
    /// vector.
    pub fn adapted_basis(&self) -> Result<(Matrix, Vec<usize>)> {
        let series = self.lower_central_series();
        if !series.last().unwrap().is_zero() {
            return Err(Error::NotNilpotent);
        }
        let n = self.dim;
        let mut cols = Vec::new();
        let mut depth = Vec::new();
        for i in 0..series.len() - 1 {
            let mut acc = series[i + 1].clone();
            for v in series[i].basis_vectors() {
                if !acc.contains(&v) {
                    acc = acc.sum(&Subspace::span(n, vec![v.clone()]));
                    cols.push(v);
                    depth.push(i + 1);
                }
            }
        }
        Ok((Matrix::from_cols(cols, n), depth))
    }

    /// Attaches the layout `w(e_i) = max {k : e_i in g^k}` when it is a Carnot grading.
    pub fn with_lcs_layout(&self) -> Option<LieAlgebra> {
        let series = self.lower_central_series();
        if !series.last()?.is_zero() {
            return None;
        }
        let w: Vec<usize> = (0..self.dim)
            .map(|i| {
                let e = crate::linalg::unit_vector(self.dim, i);
                series.iter().take_while(|s| s.contains(&e)).count()
            })
            .collect();
        let g = self.clone().with_weights(w);
        (g.layout_is_grading() && g.is_carnot()).then_some(g)
    }

    /// This algebra with a Carnot layout, keeping the attached one when it qualifies.
    pub fn carnot_view(&self) -> Option<LieAlgebra> {
        if self.weights().is_some() && self.layout_is_grading() && self.is_carnot() {
            Some(self.clone())
        } else {
            self.with_lcs_layout()
        }
    }

    /// `gr g` with respect to the lower central series, with its Carnot layout.
    pub fn associated_graded(&self) -> Result<LieAlgebra> {
        let (p, depth) = self.adapted_basis()?;
        let inv = p.inverse().ok_or(Error::Singular)?;
        let n = self.dim;
        let cols = p.col_vectors();
        let mut g = LieAlgebra::abelian(n);
        for a in 0..n {
            for b in a + 1..n {
                let coords = inv.mul_vec(&self.bracket(&cols[a], &cols[b])?);
                let w = depth[a] + depth[b];
                let v = coords
                    .into_iter()
                    .enumerate()
                    .map(|(k, c)| if depth[k] == w { c } else { Scalar::zero() })
                    .collect();
                g.set_bracket(a, b, v);
            }
        }
        Ok(g.with_weights(depth))
    }

    /// `m` maps this algebra into `h` (columns are images of basis vectors).
    pub fn is_homomorphism_to(&self, h: &LieAlgebra, m: &Matrix) -> bool {
        if m.rows() != h.dim || m.cols() != self.dim {
            return false;
        }
        let cols = m.col_vectors();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = m.mul_vec(&self.bracket_basis(i, j));
                let rhs = h.bracket(&cols[i], &cols[j]).expect("dims checked");
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_isomorphism_to(&self, h: &LieAlgebra, m: &Matrix) -> bool {
        m.rows() == m.cols() && m.inverse().is_some() && self.is_homomorphism_to(h, m)
    }
}
