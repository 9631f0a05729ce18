//! Automorphisms, derivations, and orbit questions for the action on H^2.

use crate::catalog;
use crate::cohomology::{
    cohomology, d_basis_1form, differential, filtration_constraints, homogeneous_cohomology,
    set_has_filtration_s, CohomologyBasis,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::forms::{ExteriorForm, MonomialBasis};
use crate::lie::LieAlgebra;
use crate::linalg::{dot, is_zero_vector, Matrix, Subspace, Vector};
use crate::scalar::{self, int, one, pow, sign, zero, Scalar};
use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

// ---------------------------------------------------------------- derivations

fn derivation_system(g: &LieAlgebra, allowed: &[(usize, usize)]) -> Matrix {
    let n = g.dim();
    let var = |r: usize, c: usize| allowed.iter().position(|&x| x == (r, c));
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let cij = g.bracket_basis(i, j);
            for r in 0..n {
                let mut row = vec![zero(); allowed.len()];
                // D[e_i,e_j]_r
                for (k, c) in cij.iter().enumerate() {
                    if !c.is_zero() {
                        if let Some(v) = var(r, k) {
                            row[v] += c;
                        }
                    }
                }
                // - [D e_i, e_j]_r - [e_i, D e_j]_r
                for a in 0..n {
                    let caj = g.bracket_basis(a, j)[r].clone();
                    if !caj.is_zero() {
                        if let Some(v) = var(a, i) {
                            row[v] -= &caj;
                        }
                    }
                    let cia = g.bracket_basis(i, a)[r].clone();
                    if !cia.is_zero() {
                        if let Some(v) = var(a, j) {
                            row[v] -= &cia;
                        }
                    }
                }
                if !is_zero_vector(&row) {
                    rows.push(row);
                }
            }
        }
    }
    Matrix::from_rows(rows, allowed.len())
}

fn derivations_on(g: &LieAlgebra, allowed: Vec<(usize, usize)>) -> Vec<Matrix> {
    let n = g.dim();
    let sys = derivation_system(g, &allowed);
    let ker = if sys.rows() == 0 {
        (0..allowed.len()).map(|i| crate::linalg::unit_vector(allowed.len(), i)).collect()
    } else {
        sys.kernel_basis()
    };
    ker.into_iter()
        .map(|v| {
            let mut d = Matrix::zeros(n, n);
            for (x, &(r, c)) in v.into_iter().zip(&allowed) {
                d[(r, c)] = x;
            }
            d
        })
        .collect()
}

/// Basis of Der(g) (matrices with columns `D e_i`).
pub fn derivations(g: &LieAlgebra) -> Vec<Matrix> {
    let n = g.dim();
    derivations_on(g, (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).collect())
}

/// Derivations raising weight by exactly `k`.
pub fn derivations_of_degree(g: &LieAlgebra, k: usize) -> Result<Vec<Matrix>> {
    let w = g.weights().ok_or(Error::NoLayout)?;
    let n = g.dim();
    let allowed = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).filter(|&(r, c)| w[r] == w[c] + k).collect();
    Ok(derivations_on(g, allowed))
}

pub fn is_derivation(g: &LieAlgebra, d: &Matrix) -> bool {
    let n = g.dim();
    let cols = d.col_vectors();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.mul_vec(&g.bracket_basis(i, j));
            let mut rhs = g.bracket_with_basis(j, &cols[i]);
            rhs.iter_mut().for_each(|x| *x = -x.clone());
            crate::linalg::axpy(&mut rhs, &one(), &g.bracket_with_basis(i, &cols[j]));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `exp(D)` for nilpotent `D`.
pub fn exp_nilpotent(d: &Matrix) -> Result<Matrix> {
    let n = d.rows();
    let mut out = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=n + 1 {
        term = term.mul(d);
        if term.is_zero() {
            return Ok(out);
        }
        let f = one() / int(k as i64);
        let mut scaled = term.clone();
        for r in 0..n {
            for c in 0..n {
                scaled[(r, c)] = &term[(r, c)] * &f;
            }
        }
        term = scaled.clone();
        for r in 0..n {
            for c in 0..n {
                out[(r, c)] += &scaled[(r, c)];
            }
        }
    }
    Err(Error::Invalid("matrix is not nilpotent".into()))
}

// ---------------------------------------------------------------- graded maps

/// Data for extending degree-one maps on a Carnot algebra.
#[derive(Clone, Debug)]
pub struct GradedFrame {
    pub blocks: Vec<Vec<usize>>,
    /// For weight `w >= 2` (index `w - 2`): generating pairs and the inverse of their
    /// bracket matrix in the block basis.
    gens: Vec<(Vec<(usize, usize)>, Matrix)>,
}

impl GradedFrame {
    pub fn new(g: &LieAlgebra) -> Result<Self> {
        match g.is_carnot_layout()? {
            crate::lie::CarnotCheck::Yes => {}
            crate::lie::CarnotCheck::No(i) => return Err(Error::NotCarnot(i)),
        }
        let w = g.weights().unwrap();
        let top = w.iter().copied().max().unwrap_or(0);
        let blocks: Vec<Vec<usize>> = (1..=top).map(|k| (0..g.dim()).filter(|&i| w[i] == k).collect()).collect();
        let mut gens = Vec::new();
        for wt in 2..=top {
            let target = &blocks[wt - 1];
            let mut chosen = Vec::new();
            let mut cols: Vec<Vector> = Vec::new();
            'outer: for &a in &blocks[0] {
                for &b in &blocks[wt - 2] {
                    let v = g.bracket_basis(a, b);
                    let coords: Vector = target.iter().map(|&k| v[k].clone()).collect();
                    let mut trial = cols.clone();
                    trial.push(coords.clone());
                    if Matrix::from_rows(trial, target.len()).rank() == cols.len() + 1 {
                        cols.push(coords);
                        chosen.push((a, b));
                        if cols.len() == target.len() {
                            break 'outer;
                        }
                    }
                }
            }
            let s = Matrix::from_cols(cols, target.len());
            let inv = s.inverse().ok_or(Error::NotCarnot(wt - 1))?;
            gens.push((chosen, inv));
        }
        Ok(GradedFrame { blocks, gens })
    }

    pub fn degree_one_dim(&self) -> usize {
        self.blocks.first().map_or(0, |b| b.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAutomorphism {
    /// Columns are images of basis vectors.
    pub matrix: Matrix,
    pub blocks: Vec<Matrix>,
}

/// Extends `a` (columns: images of `g_1` in `h_1` coordinates) to a graded isomorphism.
pub fn extend_degree_one_iso(
    g: &LieAlgebra,
    gf: &GradedFrame,
    h: &LieAlgebra,
    hf: &GradedFrame,
    a: &Matrix,
) -> Result<Matrix> {
    let n = g.dim();
    if h.dim() != n || gf.blocks.iter().map(|b| b.len()).ne(hf.blocks.iter().map(|b| b.len())) {
        return Err(Error::DoesNotExtend);
    }
    let d1 = gf.degree_one_dim();
    if a.rows() != d1 || a.cols() != d1 {
        return Err(Error::DimensionMismatch { expected: d1, got: a.rows() });
    }
    if a.determinant().is_zero() {
        return Err(Error::Singular);
    }
    let mut phi = Matrix::zeros(n, n);
    for (c, &src) in gf.blocks[0].iter().enumerate() {
        for (r, &dst) in hf.blocks[0].iter().enumerate() {
            phi[(dst, src)] = a[(r, c)].clone();
        }
    }
    for wt in 2..=gf.blocks.len() {
        let (pairs, sinv) = &gf.gens[wt - 2];
        let tb = &hf.blocks[wt - 1];
        let tcols: Vec<Vector> = pairs
            .iter()
            .map(|&(x, y)| {
                let v = h.bracket(&phi.col(x), &phi.col(y)).expect("dims");
                tb.iter().map(|&k| v[k].clone()).collect()
            })
            .collect();
        let t = Matrix::from_cols(tcols, tb.len());
        let block = t.mul(sinv);
        for (c, &src) in gf.blocks[wt - 1].iter().enumerate() {
            for (r, &dst) in tb.iter().enumerate() {
                phi[(dst, src)] = block[(r, c)].clone();
            }
        }
    }
    if !g.is_homomorphism_to(h, &phi) || phi.determinant().is_zero() {
        return Err(Error::DoesNotExtend);
    }
    Ok(phi)
}

pub fn extend_degree_one_map(g: &LieAlgebra, a: &Matrix) -> Result<GradedAutomorphism> {
    let f = GradedFrame::new(g)?;
    let m = extend_degree_one_iso(g, &f, g, &f, a)?;
    let blocks = f
        .blocks
        .iter()
        .map(|b| Matrix::from_rows(b.iter().map(|&r| b.iter().map(|&c| m[(r, c)].clone()).collect()).collect(), b.len()))
        .collect();
    Ok(GradedAutomorphism { matrix: m, blocks })
}

pub fn is_automorphism(g: &LieAlgebra, m: &Matrix) -> bool {
    g.is_isomorphism_to(g, m)
}

// ---------------------------------------------------------------- pullback on H^2

/// Matrix of `phi^*` on the classes of `frame` (columns: images), inside `h`.
pub fn pullback_matrix(h: &CohomologyBasis, frame: &[ExteriorForm], phi: &Matrix) -> Result<Matrix> {
    let cols = frame
        .iter()
        .map(|w| h.coordinates_in(frame, &w.pullback(phi)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_cols(cols, frame.len()))
}

/// `phi^*` of a closed form, checked to stay closed and to send boundaries to boundaries.
pub fn pullback_on_h2(g: &LieAlgebra, phi: &Matrix, class: &ExteriorForm) -> Result<ExteriorForm> {
    if !is_automorphism(g, phi) {
        return Err(Error::Invalid("map is not an automorphism".into()));
    }
    if !differential(g, class).is_zero() {
        return Err(Error::NotClosed);
    }
    let out = class.pullback(phi);
    debug_assert!(differential(g, &out).is_zero());
    Ok(out)
}

/// Infinitesimal pullback `D . w` (derivative of `exp(tD)^* w` at `t = 0`).
pub fn derivation_action(w: &ExteriorForm, d: &Matrix) -> ExteriorForm {
    let n = w.dim();
    let images: Vec<ExteriorForm> = (0..n).map(|j| ExteriorForm::from_1form(d.row(j))).collect();
    let mut out = ExteriorForm::zero(n, w.degree());
    for (t, c) in w.terms() {
        for pos in 0..t.len() {
            let mut acc = ExteriorForm::monomial(n, &[], c.clone());
            for (q, &j) in t.iter().enumerate() {
                let f = if q == pos { images[j].clone() } else { ExteriorForm::basis_1form(n, j) };
                acc = acc.wedge(&f);
            }
            out = out.add(&acc);
        }
    }
    out
}

// ---------------------------------------------------------------- tangent dimension

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigidityOutcome {
    OpenOrbitCertified,
    ModuliDirection,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentReport {
    pub rank: usize,
    pub grassmannian_dim: usize,
    pub outcome: RigidityOutcome,
}

fn span_coordinates(h: &CohomologyBasis, classes: &[ExteriorForm]) -> Result<Subspace> {
    let rows = classes.iter().map(|c| h.coordinates(c)).collect::<Result<Vec<_>>>()?;
    let s = Subspace::span(h.dim(), rows);
    if s.dim() != classes.len() {
        return Err(Error::Dependent);
    }
    Ok(s)
}

fn tangent_rank(h: &CohomologyBasis, classes: &[ExteriorForm], ders: &[Matrix]) -> Result<(usize, usize)> {
    let w = span_coordinates(h, classes)?;
    let m = classes.len();
    let hd = h.dim();
    let gr = m * (hd - m);
    let rows = ders
        .iter()
        .map(|d| {
            let mut row = Vec::with_capacity(gr);
            for c in classes {
                let v = h.coordinates(&derivation_action(c, d))?;
                row.extend(w.quotient_coordinates(&v));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let rank = if gr == 0 || rows.is_empty() { 0 } else { Matrix::from_rows(rows, gr).rank() };
    Ok((rank, gr))
}

fn outcome(g: &LieAlgebra, classes: &[ExteriorForm], rank: usize, gr: usize) -> Result<RigidityOutcome> {
    let s = g.nil_index().ok_or(Error::NotNilpotent)? + 1;
    if !set_has_filtration_s(g, classes, s)? {
        return Ok(RigidityOutcome::Inconclusive);
    }
    Ok(if rank == gr { RigidityOutcome::OpenOrbitCertified } else { RigidityOutcome::ModuliDirection })
}

/// Rank of the Der(g) action at the point `span(classes)` of `Gr(m, H^2)`.
pub fn orbit_tangent_dimension(g: &LieAlgebra, classes: &[ExteriorForm]) -> Result<TangentReport> {
    let h = cohomology(g, 2)?;
    let (rank, gr) = tangent_rank(&h, classes, &derivations(g))?;
    Ok(TangentReport { rank, grassmannian_dim: gr, outcome: outcome(g, classes, rank, gr)? })
}

/// Graded variant: degree-0 derivations acting on `H^2_(lambda)`.
pub fn orbit_tangent_dimension_graded(g: &LieAlgebra, classes: &[ExteriorForm], lambda: usize) -> Result<TangentReport> {
    let h = homogeneous_cohomology(g, 2, lambda)?;
    let (rank, gr) = tangent_rank(&h, classes, &derivations_of_degree(g, 0)?)?;
    Ok(TangentReport { rank, grassmannian_dim: gr, outcome: outcome(g, classes, rank, gr)? })
}

// ---------------------------------------------------------------- m2(5)

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M25Params {
    pub alpha: Scalar,
    /// `alpha_3 .. alpha_6`
    pub a: [Scalar; 4],
    /// `beta_3 .. beta_6`
    pub b: [Scalar; 4],
}

/// The automorphism of `m2(5)` with `phi^*` in the standard parametrisation (alpha, a_3..a_6, b_3..b_6).
pub fn m25_automorphism(p: &M25Params) -> Matrix {
    let al = &p.alpha;
    let [a3, a4, a5, a6] = &p.a;
    let [b3, b4, b5, b6] = &p.b;
    let mut m = Matrix::zeros(6, 6);
    m[(0, 0)] = al.clone();
    m[(1, 1)] = pow(al, 2);
    m[(2, 2)] = pow(al, 3);
    m[(2, 1)] = b3.clone();
    m[(2, 0)] = a3.clone();
    m[(3, 3)] = pow(al, 4);
    m[(3, 2)] = al * b3;
    m[(3, 1)] = b4.clone();
    m[(3, 0)] = a4.clone();
    m[(4, 4)] = pow(al, 5);
    m[(4, 3)] = pow(al, 2) * b3;
    m[(4, 2)] = al * b4 - a3 * pow(al, 2);
    m[(4, 1)] = b5.clone();
    m[(4, 0)] = a5.clone();
    m[(5, 5)] = pow(al, 6);
    m[(5, 4)] = pow(al, 3) * b3;
    m[(5, 3)] = pow(al, 2) * b4 - a3 * pow(al, 3);
    m[(5, 2)] = al * b5 - a4 * pow(al, 2);
    m[(5, 1)] = b6.clone();
    m[(5, 0)] = a6.clone();
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum M25Label {
    InfinityPoint,
    Line(Scalar),
    Origin,
    PlusRay,
    MinusRay,
    /// Rays merged over the complex numbers.
    Ray,
    /// `x1 = 0, x2 != 0`, missing from the usual list of orbits.
    X1ZeroLine,
}

impl M25Label {
    pub fn name(&self) -> String {
        match self {
            M25Label::InfinityPoint => "infinity-point".into(),
            M25Label::Line(t) => format!("line(t={t})"),
            M25Label::Origin => "origin".into(),
            M25Label::PlusRay => "plus-ray".into(),
            M25Label::MinusRay => "minus-ray".into(),
            M25Label::Ray => "ray".into(),
            M25Label::X1ZeroLine => "x1-zero-line".into(),
        }
    }

    pub fn representative(&self) -> [Scalar; 3] {
        match self {
            M25Label::InfinityPoint => [one(), zero(), zero()],
            M25Label::Line(t) => [one(), t.clone(), zero()],
            M25Label::Origin => [zero(), zero(), one()],
            M25Label::PlusRay | M25Label::Ray => [one(), zero(), one()],
            M25Label::MinusRay => [-one(), zero(), one()],
            M25Label::X1ZeroLine => [zero(), one(), zero()],
        }
    }
}

/// Orbit label of `x1 Omega_7 + x2 omega_7 + x3 omega_5`.
pub fn m25_normal_form(x: &[Scalar; 3], field: Field) -> Result<M25Label> {
    let [x1, x2, x3] = x;
    if x1.is_zero() && x2.is_zero() && x3.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(if !x2.is_zero() {
        if x1.is_zero() {
            M25Label::X1ZeroLine
        } else {
            M25Label::Line(x2 / x1)
        }
    } else if x1.is_zero() {
        M25Label::Origin
    } else if x3.is_zero() {
        M25Label::InfinityPoint
    } else if field == Field::Complex {
        M25Label::Ray
    } else if (x1 * x3).is_positive() {
        M25Label::PlusRay
    } else {
        M25Label::MinusRay
    })
}

// ---------------------------------------------------------------- L(2,3)

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum L23Label {
    Zero,
    Parabola,
    Inside,
    Outside,
    /// Inside and outside merged over the complex numbers.
    Open,
}

impl L23Label {
    pub fn name(&self) -> &'static str {
        match self {
            L23Label::Zero => "zero",
            L23Label::Parabola => "parabola",
            L23Label::Inside => "inside",
            L23Label::Outside => "outside",
            L23Label::Open => "open",
        }
    }
}

/// Label by `Delta = x2^2 - x1 x3` on the frame `(a1^a3, a1^b3 + b1^a3, b1^b3)`.
pub fn l23_orbit_label(x: &[Scalar; 3], field: Field) -> L23Label {
    let [x1, x2, x3] = x;
    if x1.is_zero() && x2.is_zero() && x3.is_zero() {
        return L23Label::Zero;
    }
    let delta = x2 * x2 - x1 * x3;
    match (sign(&delta), field) {
        (0, _) => L23Label::Parabola,
        (_, Field::Complex) => L23Label::Open,
        (-1, _) => L23Label::Inside,
        _ => L23Label::Outside,
    }
}

/// Matrix of `phi^*` on the `L(2,3)` frame for `phi^*(a^1) = alpha a^1 + rho b^1`,
/// `phi^*(b^1) = beta a^1 + mu b^1`, the classical model action.
pub fn l23_printed_action(alpha: &Scalar, rho: &Scalar, beta: &Scalar, mu: &Scalar) -> Matrix {
    let delta = alpha * mu - rho * beta;
    let rows = vec![
        vec![alpha * alpha, int(2) * alpha * beta, beta * beta],
        vec![alpha * rho, rho * beta + alpha * mu, beta * mu],
        vec![rho * rho, int(2) * rho * mu, mu * mu],
    ];
    let rows = rows.into_iter().map(|r| r.into_iter().map(|x| x * &delta).collect()).collect();
    Matrix::from_rows(rows, 3)
}

// ---------------------------------------------------------------- L~(2,4)

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LTilde24Label {
    T(Scalar),
    ParabolaOrbit,
    PlanePlus,
    PlaneMinus,
    /// Plus and minus merged over the complex numbers.
    PlaneOff,
    Point1000,
    Point0100,
    LineTau(Scalar),
    /// `x4 = 0`, `x3 = -3 x2 != 0`, `x1 != 0`, missing from the usual list of orbits.
    PlaneSpecial,
}

impl LTilde24Label {
    pub fn name(&self) -> String {
        match self {
            LTilde24Label::T(t) => format!("t={t}"),
            LTilde24Label::ParabolaOrbit => "parabola-orbit".into(),
            LTilde24Label::PlanePlus => "plane-plus".into(),
            LTilde24Label::PlaneMinus => "plane-minus".into(),
            LTilde24Label::PlaneOff => "plane-off-parabola".into(),
            LTilde24Label::Point1000 => "(1:0:0:0)".into(),
            LTilde24Label::Point0100 => "(0:1:0:0)".into(),
            LTilde24Label::LineTau(t) => format!("line(tau={t})"),
            LTilde24Label::PlaneSpecial => "x4-plane-special".into(),
        }
    }
}

/// The classical invariant on the weight-5 frame `h1..h4`.
pub fn ltilde24_invariant(x: &[Scalar; 4], field: Field) -> Result<LTilde24Label> {
    if x.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let [x1, x2, x3, x4] = x;
    if !x4.is_zero() {
        let (cx, y, z) = (x1 / x4, x2 / x4, x3 / x4);
        if y != z {
            let d = &z - &y;
            return Ok(LTilde24Label::T((cx - &y * &y - &y * &z) / (&d * &d)));
        }
        let q = cx - int(2) * &y * &y;
        return Ok(match (sign(&q), field) {
            (0, _) => LTilde24Label::ParabolaOrbit,
            (_, Field::Complex) => LTilde24Label::PlaneOff,
            (1, _) => LTilde24Label::PlanePlus,
            _ => LTilde24Label::PlaneMinus,
        });
    }
    if x2.is_zero() && x3.is_zero() {
        return Ok(LTilde24Label::Point1000);
    }
    let lin = int(3) * x2 + x3;
    if lin.is_zero() && !x1.is_zero() {
        return Ok(LTilde24Label::PlaneSpecial);
    }
    Ok(if x3.is_zero() { LTilde24Label::Point0100 } else { LTilde24Label::LineTau(x2 / x3) })
}

/// The printed 4x4 action matrix (columns are images) for `a^1 -> alpha a^1 + rho b^1`,
/// `b^1 -> mu b^1`.
pub fn ltilde24_printed_action(alpha: &Scalar, rho: &Scalar, mu: &Scalar) -> Matrix {
    let f = alpha * alpha * mu;
    let z = zero();
    let rows = vec![
        vec![alpha * alpha, int(3) * rho * alpha, alpha * rho, int(2) * rho * rho],
        vec![z.clone(), alpha * mu, z.clone(), mu * rho],
        vec![z.clone(), z.clone(), alpha * mu, mu * rho],
        vec![z.clone(), z.clone(), z, mu * mu],
    ];
    Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|x| x * &f).collect()).collect(), 4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadricType {
    HyperbolicParaboloid,
    ParabolicCylinder,
    EllipticParaboloid,
}

impl QuadricType {
    pub fn name(&self) -> &'static str {
        match self {
            QuadricType::HyperbolicParaboloid => "hyperbolic-paraboloid",
            QuadricType::ParabolicCylinder => "parabolic-cylinder",
            QuadricType::EllipticParaboloid => "elliptic-paraboloid",
        }
    }
}

/// Type of `F_t = t(z-y)^2 + y^2 + yz - x = 0` from the determinant of its quadratic part.
pub fn quadric_type(t: &Scalar) -> QuadricType {
    // quadratic part in (y, z): [[t+1, (1-2t)/2], [(1-2t)/2, t]]
    let half = scalar::frac(1, 2);
    let off = (one() - int(2) * t) * &half;
    let q = Matrix::from_rows(vec![vec![t + one(), off.clone()], vec![off, t.clone()]], 2);
    match sign(&q.determinant()) {
        0 => QuadricType::ParabolicCylinder,
        1 => QuadricType::EllipticParaboloid,
        _ => QuadricType::HyperbolicParaboloid,
    }
}

// ---------------------------------------------------------------- sampling

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: usize,
    pub seed: u64,
    pub field: Field,
    pub exec: Exec,
    /// Grid values used for matrix entries before random sampling.
    pub grid_len: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 20_000, seed: 0, field: Field::Real, exec: Exec::default(), grid_len: 9 }
    }
}

/// Deterministic stream of candidate `k x k` matrices: the grid by height, then seeded samples.
pub struct MatrixStream {
    k: usize,
    values: Vec<Scalar>,
    height: usize,
    idx: Vec<usize>,
    grid_done: bool,
    rng: ChaCha8Rng,
    pool: Vec<Scalar>,
}

impl MatrixStream {
    pub fn new(k: usize, grid_len: usize, seed: u64) -> Self {
        MatrixStream {
            k,
            values: scalar::grid(grid_len.max(1)),
            height: 0,
            idx: vec![0; k * k],
            grid_done: k == 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: scalar::grid(25),
        }
    }

    fn advance(&mut self) -> bool {
        // next tuple in [0..=height]^L with max == height
        loop {
            let mut i = self.idx.len();
            loop {
                if i == 0 {
                    self.height += 1;
                    if self.height >= self.values.len() {
                        return false;
                    }
                    self.idx.iter_mut().for_each(|x| *x = 0);
                    break;
                }
                i -= 1;
                if self.idx[i] < self.height {
                    self.idx[i] += 1;
                    for x in &mut self.idx[i + 1..] {
                        *x = 0;
                    }
                    break;
                }
            }
            if self.idx.iter().any(|&x| x == self.height) {
                return true;
            }
        }
    }

    fn build(&self, idx: &[usize]) -> Matrix {
        let rows = (0..self.k).map(|r| (0..self.k).map(|c| self.values[idx[r * self.k + c]].clone()).collect()).collect();
        Matrix::from_rows(rows, self.k)
    }
}

impl Iterator for MatrixStream {
    type Item = Matrix;
    fn next(&mut self) -> Option<Matrix> {
        if !self.grid_done {
            if self.height == 0 && self.idx.iter().all(|&x| x == 0) && !self.idx.is_empty() {
                // the zero matrix is singular; skip straight to height 1
                self.idx[self.k * self.k - 1] = 0;
            }
            if self.advance() {
                return Some(self.build(&self.idx.clone()));
            }
            self.grid_done = true;
        }
        let n = self.k * self.k;
        let rows = (0..self.k)
            .map(|_| (0..self.k).map(|_| self.pool[self.rng.gen_range(0..self.pool.len())].clone()).collect())
            .collect();
        let _ = n;
        Some(Matrix::from_rows(rows, self.k))
    }
}

fn m25_param_stream(seed: u64) -> impl Iterator<Item = M25Params> {
    let vals = scalar::grid(7);
    let alphas = [one(), -one(), int(2), -int(2), scalar::frac(1, 2)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = scalar::grid(15);
    let mut grid = Vec::new();
    // beta3, beta4 move omega_7 towards omega_5; the other parameters act trivially on H^2.
    for al in &alphas {
        for b3 in &vals {
            for b4 in &vals {
                grid.push(M25Params { alpha: al.clone(), a: [zero(), zero(), zero(), zero()], b: [b3.clone(), b4.clone(), zero(), zero()] });
            }
        }
    }
    grid.into_iter().chain(std::iter::from_fn(move || {
        let mut pick = || pool[rng.gen_range(0..pool.len())].clone();
        let mut al = pick();
        while al.is_zero() {
            al = pick();
        }
        Some(M25Params { alpha: al, a: [pick(), pick(), pick(), pick()], b: [pick(), pick(), pick(), pick()] })
    }))
}

/// Random automorphism of a Carnot algebra: a graded part from a random degree-one block
/// composed with `exp` of a random positive-degree derivation.
pub fn random_automorphism(g: &LieAlgebra, frame: &GradedFrame, rng: &mut ChaCha8Rng) -> Result<Matrix> {
    let pool = scalar::grid(11);
    let k = frame.degree_one_dim();
    let mut graded = None;
    for _ in 0..1000 {
        let rows = (0..k).map(|_| (0..k).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect()).collect();
        let a = Matrix::from_rows(rows, k);
        if let Ok(m) = extend_degree_one_iso(g, frame, g, frame, &a) {
            graded = Some(m);
            break;
        }
    }
    let graded = graded.ok_or(Error::DoesNotExtend)?;
    let top = frame.blocks.len();
    let mut d = Matrix::zeros(g.dim(), g.dim());
    for deg in 1..top {
        for b in derivations_of_degree(g, deg)? {
            let c = pool[rng.gen_range(0..pool.len())].clone();
            for r in 0..g.dim() {
                for col in 0..g.dim() {
                    if !b[(r, col)].is_zero() {
                        d[(r, col)] += &b[(r, col)] * &c;
                    }
                }
            }
        }
    }
    Ok(graded.mul(&exp_nilpotent(&d)?))
}

pub fn random_m25_params(rng: &mut ChaCha8Rng) -> M25Params {
    let pool = scalar::grid(15);
    let mut pick = || pool[rng.gen_range(0..pool.len())].clone();
    let mut al = pick();
    while al.is_zero() {
        al = pick();
    }
    M25Params { alpha: al, a: [pick(), pick(), pick(), pick()], b: [pick(), pick(), pick(), pick()] }
}

// ---------------------------------------------------------------- orbit equivalence

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitWitness {
    /// Automorphism of the base with `phi^*(span2) = span1` in H^2.
    pub phi: Matrix,
    /// `phi^* c'_j = sum_i c_i A_ij` modulo coboundaries.
    pub a_psi: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitResult {
    Yes(OrbitWitness),
    No { invariant: String, left: String, right: String },
    Undecided { tried: usize },
}

fn filtration_profile(g: &LieAlgebra, span: &[ExteriorForm]) -> Result<Vec<usize>> {
    let n = g.dim();
    let series = g.lower_central_series();
    let s = series.len() - 1;
    let basis = MonomialBasis::new(n, 2);
    let m = span.len();
    let mut cols: Vec<Vector> = span.iter().map(|c| c.to_vector(&basis)).collect();
    for k in 0..n {
        cols.push(d_basis_1form(g, k).to_vector(&basis));
    }
    let mut out = Vec::new();
    for k in 2..=2 * s {
        let rows = filtration_constraints(g, &series, &basis, 2, k);
        let sys: Vec<Vector> = rows.iter().map(|r| cols.iter().map(|c| dot(r, c)).collect()).collect();
        let ker = if sys.is_empty() {
            (0..m + n).map(|i| crate::linalg::unit_vector(m + n, i)).collect()
        } else {
            Matrix::from_rows(sys, m + n).kernel_basis()
        };
        let proj: Vec<Vector> = ker.into_iter().map(|v| v[..m].to_vec()).collect();
        out.push(Subspace::span(m, proj).dim());
    }
    Ok(out)
}

/// Rank of each weight component of the span (graded algebras only).
fn weight_profile(g: &LieAlgebra, h: &CohomologyBasis, span: &[ExteriorForm]) -> Result<Option<Vec<(usize, usize)>>> {
    let Some(w) = g.weights() else { return Ok(None) };
    if !g.layout_is_grading() {
        return Ok(None);
    }
    let top = 2 * w.iter().copied().max().unwrap_or(0);
    let mut frame = Vec::new();
    let mut owner = Vec::new();
    for l in 2..=top {
        for r in homogeneous_cohomology(g, 2, l)?.representatives {
            frame.push(r);
            owner.push(l);
        }
    }
    let coords = span.iter().map(|c| h.coordinates_in(&frame, c)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for l in 2..=top {
        let rows: Vec<Vector> = coords
            .iter()
            .map(|v| v.iter().zip(&owner).filter(|(_, &o)| o == l).map(|(x, _)| x.clone()).collect())
            .collect();
        let width = owner.iter().filter(|&&o| o == l).count();
        if width == 0 {
            continue;
        }
        let r = Matrix::from_rows(rows, width).rank();
        if r > 0 {
            out.push((l, r));
        }
    }
    Ok(Some(out))
}

fn fmt_vec<T: std::fmt::Debug>(v: &T) -> String {
    format!("{v:?}")
}

enum Sampler {
    Graded(GradedFrame),
    M25,
    None,
}

fn sampler_for(g: &LieAlgebra) -> (Sampler, LieAlgebra) {
    if g.same_structure(&catalog::m2_5()) {
        return (Sampler::M25, g.clone());
    }
    match g.carnot_view() {
        Some(c) => (Sampler::Graded(GradedFrame::new(&c).expect("carnot layout")), c),
        None => (Sampler::None, g.clone()),
    }
}

/// Registered invariant values for the span, when the algebra is one of the worked examples.
fn registered_invariant(g: &LieAlgebra, h: &CohomologyBasis, span: &[ExteriorForm], field: Field) -> Result<Option<(String, String)>> {
    if span.len() != 1 {
        return Ok(None);
    }
    if g.same_structure(&catalog::m2_5()) {
        let c = h.coordinates_in(&catalog::m25_frame(), &span[0])?;
        let lab = m25_normal_form(&[c[0].clone(), c[1].clone(), c[2].clone()], field)?;
        return Ok(Some(("m25 orbit label".into(), lab.name())));
    }
    if g.same_structure(&catalog::free_nilpotent(2, 3)?) {
        let c = h.coordinates_in(&catalog::l23_frame(), &span[0])?;
        let lab = l23_orbit_label(&[c[0].clone(), c[1].clone(), c[2].clone()], field);
        return Ok(Some(("l23 orbit label".into(), lab.name().into())));
    }
    Ok(None)
}

/// Decides whether `span1` and `span2` lie in one orbit of the graded automorphism group on
/// `Gr(m, H^2)` (the full parametric family for `m2(5)`).
pub fn orbit_equivalent_graded(
    g: &LieAlgebra,
    span1: &[ExteriorForm],
    span2: &[ExteriorForm],
    opts: &SearchOptions,
) -> Result<OrbitResult> {
    orbit_search(g, span1, span2, opts, true)
}

/// Same question for the full automorphism group: only invariants of `Aut(g)` may separate,
/// and witnesses come from the same graded or parametric search.
pub fn orbit_equivalent(
    g: &LieAlgebra,
    span1: &[ExteriorForm],
    span2: &[ExteriorForm],
    opts: &SearchOptions,
) -> Result<OrbitResult> {
    orbit_search(g, span1, span2, opts, false)
}

fn orbit_search(
    g: &LieAlgebra,
    span1: &[ExteriorForm],
    span2: &[ExteriorForm],
    opts: &SearchOptions,
    graded: bool,
) -> Result<OrbitResult> {
    if span1.len() != span2.len() {
        return Err(Error::DimensionMismatch { expected: span1.len(), got: span2.len() });
    }
    let m = span1.len();
    let h = cohomology(g, 2)?;
    let w1 = span_coordinates(&h, span1)?;
    let w2 = span_coordinates(&h, span2)?;
    let n = g.dim();
    let coords1 = Matrix::from_cols(span1.iter().map(|c| h.coordinates(c)).collect::<Result<Vec<_>>>()?, h.dim());
    let identity_witness = |phi: Matrix| -> Result<OrbitResult> {
        let img: Vec<Vector> = span2.iter().map(|c| h.coordinates(&c.pullback(&phi))).collect::<Result<_>>()?;
        let mut a = Matrix::zeros(m, m);
        for (j, v) in img.iter().enumerate() {
            let x = coords1.solve(v).ok_or(Error::Inconsistent)?;
            for i in 0..m {
                a[(i, j)] = x[i].clone();
            }
        }
        Ok(OrbitResult::Yes(OrbitWitness { phi, a_psi: a }))
    };
    if w1 == w2 {
        return identity_witness(Matrix::identity(n));
    }
    let (sampler, gv) = sampler_for(g);
    let graded = graded && matches!(sampler, Sampler::Graded(_));
    // invariants
    let f1 = filtration_profile(g, span1)?;
    let f2 = filtration_profile(g, span2)?;
    if f1 != f2 {
        return Ok(OrbitResult::No { invariant: "filtration profile".into(), left: fmt_vec(&f1), right: fmt_vec(&f2) });
    }
    if graded {
        let p1 = weight_profile(&gv, &h, span1)?;
        let p2 = weight_profile(&gv, &h, span2)?;
        if p1 != p2 {
            return Ok(OrbitResult::No { invariant: "weight profile".into(), left: fmt_vec(&p1), right: fmt_vec(&p2) });
        }
    }
    if let (Some(a), Some(b)) = (registered_invariant(g, &h, span1, opts.field)?, registered_invariant(g, &h, span2, opts.field)?) {
        if a.1 != b.1 {
            return Ok(OrbitResult::No { invariant: a.0, left: a.1, right: b.1 });
        }
    }
    let ders = if graded { derivations_of_degree(&gv, 0)? } else { derivations(g) };
    let t1 = tangent_rank(&h, span1, &ders)?.0;
    let t2 = tangent_rank(&h, span2, &ders)?.0;
    if t1 != t2 {
        return Ok(OrbitResult::No { invariant: "orbit tangent dimension".into(), left: t1.to_string(), right: t2.to_string() });
    }
    // witness search
    let test = |phi: &Matrix| -> Option<()> {
        let rows: Option<Vec<Vector>> = span2.iter().map(|c| h.coordinates(&c.pullback(phi)).ok()).collect();
        (Subspace::span(h.dim(), rows?) == w1).then_some(())
    };
    const BATCH: usize = 256;
    let mut tried = 0;
    match sampler {
        Sampler::Graded(frame) => {
            let mut stream = MatrixStream::new(frame.degree_one_dim(), opts.grid_len, opts.seed);
            while tried < opts.budget {
                let batch: Vec<Matrix> = stream.by_ref().take(BATCH.min(opts.budget - tried)).collect();
                tried += batch.len();
                let hit = opts.exec.find_map_first(&batch, |a| {
                    let phi = extend_degree_one_iso(&gv, &frame, &gv, &frame, a).ok()?;
                    test(&phi).map(|_| phi)
                });
                if let Some(phi) = hit {
                    return identity_witness(phi);
                }
            }
        }
        Sampler::M25 => {
            let mut stream = m25_param_stream(opts.seed);
            while tried < opts.budget {
                let batch: Vec<M25Params> = stream.by_ref().take(BATCH.min(opts.budget - tried)).collect();
                tried += batch.len();
                let hit = opts.exec.find_map_first(&batch, |p| {
                    let phi = m25_automorphism(p);
                    test(&phi).map(|_| phi)
                });
                if let Some(phi) = hit {
                    return identity_witness(phi);
                }
            }
        }
        Sampler::None => {}
    }
    Ok(OrbitResult::Undecided { tried })
}

/// Lifts an orbit witness to an isomorphism `ext(base, span1) -> ext(base, span2)`.
pub fn lift_witness(base: &LieAlgebra, span1: &[ExteriorForm], span2: &[ExteriorForm], w: &OrbitWitness) -> Result<Matrix> {
    let n = base.dim();
    let m = span1.len();
    let mut f = Matrix::zeros(n + m, n + m);
    for r in 0..n {
        for c in 0..n {
            f[(r, c)] = w.phi[(r, c)].clone();
        }
    }
    let d1 = crate::cohomology::differential_matrix(base, &MonomialBasis::new(n, 1), &MonomialBasis::new(n, 2));
    let basis2 = MonomialBasis::new(n, 2);
    for j in 0..m {
        let mut target = span2[j].pullback(&w.phi);
        for i in 0..m {
            target = target.sub(&span1[i].scale(&w.a_psi[(i, j)]));
        }
        let lambda = d1.solve(&target.to_vector(&basis2)).ok_or(Error::Inconsistent)?;
        for c in 0..n {
            f[(n + j, c)] = lambda[c].clone();
        }
        for i in 0..m {
            f[(n + j, n + i)] = w.a_psi[(i, j)].clone();
        }
    }
    let g1 = crate::extension::extend(base, span1)?;
    let g2 = crate::extension::extend(base, span2)?;
    if !g1.is_isomorphism_to(&g2, &f) {
        return Err(Error::Inconsistent);
    }
    Ok(f)
}
