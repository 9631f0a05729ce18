//! Exterior forms on the dual of a Lie algebra.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{one, parse, zero, Scalar};
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

/// A p-form as a sparse map from strictly increasing index tuples to coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExteriorForm {
    degree: usize,
    dim: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

/// Sorts `idx` in place and returns the permutation sign, or 0 on a repeated index.
pub fn sort_with_sign(idx: &mut [usize]) -> i32 {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

/// All strictly increasing `p`-tuples from `0..n`, in lexicographic order.
pub fn combinations(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Index of each p-tuple in the lexicographic monomial basis.
pub struct MonomialBasis {
    pub tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, p: usize) -> Self {
        Self::from_tuples(combinations(n, p))
    }

    pub fn from_tuples(tuples: Vec<Vec<usize>>) -> Self {
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        MonomialBasis { tuples, index }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

impl ExteriorForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        ExteriorForm { degree, dim, terms: BTreeMap::new() }
    }

    /// `c e^{i_1} ^ ... ^ e^{i_p}` for indices in any order.
    pub fn monomial(dim: usize, idx: &[usize], c: Scalar) -> Self {
        let mut f = Self::zero(dim, idx.len());
        f.add_term(idx, c);
        f
    }

    pub fn basis_1form(dim: usize, i: usize) -> Self {
        Self::monomial(dim, &[i], one())
    }

    pub fn from_1form(v: &[Scalar]) -> Self {
        let mut f = Self::zero(v.len(), 1);
        for (i, c) in v.iter().enumerate() {
            f.add_term(&[i], c.clone());
        }
        f
    }

    pub fn from_vector(dim: usize, basis: &MonomialBasis, v: &[Scalar]) -> Self {
        let p = basis.tuples.first().map_or(0, |t| t.len());
        let mut f = Self::zero(dim, p);
        for (t, c) in basis.tuples.iter().zip(v) {
            if !c.is_zero() {
                f.terms.insert(t.clone(), c.clone());
            }
        }
        f
    }

    pub fn add_term(&mut self, idx: &[usize], c: Scalar) {
        assert_eq!(idx.len(), self.degree, "degree mismatch");
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        if c.is_zero() {
            return;
        }
        let mut t = idx.to_vec();
        let s = sort_with_sign(&mut t);
        if s == 0 {
            return;
        }
        let c = if s < 0 { -c } else { c };
        let e = self.terms.entry(t.clone()).or_insert_with(zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, idx: &[usize]) -> Scalar {
        let mut t = idx.to_vec();
        match sort_with_sign(&mut t) {
            0 => zero(),
            s => {
                let c = self.terms.get(&t).cloned().unwrap_or_else(zero);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn add(&self, other: &ExteriorForm) -> ExteriorForm {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree), "form shape mismatch");
        let mut f = self.clone();
        for (t, c) in &other.terms {
            f.add_term(t, c.clone());
        }
        f
    }

    pub fn sub(&self, other: &ExteriorForm) -> ExteriorForm {
        self.add(&other.scale(&-one()))
    }

    pub fn scale(&self, c: &Scalar) -> ExteriorForm {
        let mut f = Self::zero(self.dim, self.degree);
        if c.is_zero() {
            return f;
        }
        for (t, x) in &self.terms {
            f.terms.insert(t.clone(), x * c);
        }
        f
    }

    pub fn wedge(&self, other: &ExteriorForm) -> ExteriorForm {
        assert_eq!(self.dim, other.dim, "form dimension mismatch");
        let mut f = Self::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut idx = a.clone();
                idx.extend(b.iter().copied());
                f.add_term(&idx, x * y);
            }
        }
        f
    }

    pub fn to_vector(&self, basis: &MonomialBasis) -> Vector {
        let mut v = vec![zero(); basis.len()];
        for (t, c) in &self.terms {
            let i = basis.index_of(t).expect("monomial outside the given basis");
            v[i] = c.clone();
        }
        v
    }

    /// `phi^*` where column `i` of `m` is the image of `e_i`: `phi^*(e^j) = sum_i m[j][i] e^i`.
    pub fn pullback(&self, m: &Matrix) -> ExteriorForm {
        let n = m.cols();
        let images: Vec<ExteriorForm> = (0..m.rows()).map(|j| ExteriorForm::from_1form(m.row(j))).collect();
        let mut f = Self::zero(n, self.degree);
        for (t, c) in &self.terms {
            let mut acc = ExteriorForm::monomial(n, &[], c.clone());
            for &j in t {
                acc = acc.wedge(&images[j]);
            }
            f = f.add(&acc);
        }
        f
    }

    /// Weight of every monomial, or `None` when they differ (zero forms have no weight).
    pub fn weight(&self, weights: &[usize]) -> Option<usize> {
        let mut w = None;
        for t in self.terms.keys() {
            let s: usize = t.iter().map(|&i| weights[i]).sum();
            match w {
                None => w = Some(s),
                Some(x) if x != s => return None,
                _ => {}
            }
        }
        w
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (t, c)) in self.terms.iter().enumerate() {
            let mono = t.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("^");
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() || t.is_empty() {
                write!(s, "{a}").unwrap();
                if !t.is_empty() {
                    s.push('*');
                }
            }
            s.push_str(&mono);
        }
        s
    }

    /// Parses e.g. `"e1^e3 - 1/2*e2^e5"` against basis names (`"0"` is the zero form).
    pub fn parse(text: &str, names: &[String], degree: usize) -> Result<ExteriorForm> {
        let dim = names.len();
        let mut f = ExteriorForm::zero(dim, degree);
        let cleaned: String = text.replace('-', " -").replace('+', " + ");
        let mut sign = one();
        for tok in cleaned.split_whitespace() {
            if tok == "+" {
                continue;
            }
            let (neg, body) = match tok.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            if neg {
                sign = -one();
            }
            if body.is_empty() {
                continue;
            }
            let (coef, mono) = match body.split_once('*') {
                Some((c, m)) => (parse(c).ok_or_else(|| bad(c))?, m),
                None => match parse(body) {
                    Some(c) if c.is_zero() => {
                        sign = one();
                        continue;
                    }
                    Some(_) if degree > 0 => return Err(bad(body)),
                    Some(c) => (c, ""),
                    None => (one(), body),
                },
            };
            let mut idx = Vec::new();
            for name in mono.split('^').filter(|s| !s.is_empty()) {
                let i = names.iter().position(|n| n == name).ok_or_else(|| bad(name))?;
                idx.push(i);
            }
            if idx.len() != degree {
                return Err(Error::Invalid(format!("term `{body}` has degree {} not {degree}", idx.len())));
            }
            f.add_term(&idx, sign.clone() * coef);
            sign = one();
        }
        Ok(f)
    }
}

fn bad(tok: &str) -> Error {
    Error::Invalid(format!("cannot parse `{tok}` in form"))
}
