//! The recurrent classification engine: fingerprints, isomorphism tests and enumeration trees.

use crate::cohomology::{cohomology, homogeneous_cohomology, set_has_filtration_s};
use crate::error::{Error, Result};
use crate::extension::{extend, roundtrip};
use crate::forms::{combinations, ExteriorForm};
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::orbits::{
    derivations, extend_degree_one_iso, lift_witness, orbit_equivalent, GradedFrame, MatrixStream,
    OrbitResult, SearchOptions,
};
use crate::scalar::{int, one, zero, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    pub lcs: Vec<usize>,
    pub h1: usize,
    pub h2: usize,
    /// `(lambda, dim H^2_(lambda))` of the associated graded algebra, nonzero entries only.
    pub h2_weights: Vec<(usize, usize)>,
    pub der: usize,
    pub center: usize,
}

impl Fingerprint {
    /// Name and values of the first field where the two differ.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<(&'static str, String, String)> {
        macro_rules! cmp {
            ($f:ident, $name:expr) => {
                if self.$f != other.$f {
                    return Some(($name, format!("{:?}", self.$f), format!("{:?}", other.$f)));
                }
            };
        }
        cmp!(dim, "dim");
        cmp!(lcs, "lower central series profile");
        cmp!(h1, "dim H^1");
        cmp!(h2, "dim H^2");
        cmp!(h2_weights, "weight profile of H^2(gr g)");
        cmp!(der, "dim Der");
        cmp!(center, "dim center");
        None
    }
}

pub fn fingerprint(g: &LieAlgebra) -> Result<Fingerprint> {
    if !g.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let gr = g.associated_graded()?;
    let top = gr.weights().unwrap().iter().copied().max().unwrap_or(0);
    let mut h2_weights = Vec::new();
    for l in 2..=2 * top {
        let d = homogeneous_cohomology(&gr, 2, l)?.dim();
        if d > 0 {
            h2_weights.push((l, d));
        }
    }
    Ok(Fingerprint {
        dim: g.dim(),
        lcs: g.lower_central_series().iter().map(|s| s.dim()).collect(),
        h1: cohomology(g, 1)?.dim(),
        h2: cohomology(g, 2)?.dim(),
        h2_weights,
        der: derivations(g).len(),
        center: g.center().dim(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    /// Columns: images of the basis of `g` in `h`.
    Yes(Matrix),
    No { invariant: String, left: String, right: String },
    Undecided,
}

impl IsoResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoResult::Yes(_))
    }
    pub fn is_no(&self) -> bool {
        matches!(self, IsoResult::No { .. })
    }
}

fn graded_search(g: &LieAlgebra, h: &LieAlgebra, opts: &SearchOptions) -> Option<Matrix> {
    let (gc, hc) = (g.carnot_view()?, h.carnot_view()?);
    let (gf, hf) = (GradedFrame::new(&gc).ok()?, GradedFrame::new(&hc).ok()?);
    if gf.blocks.iter().map(|b| b.len()).ne(hf.blocks.iter().map(|b| b.len())) {
        return None;
    }
    let mut stream = MatrixStream::new(gf.degree_one_dim(), opts.grid_len, opts.seed);
    let mut tried = 0;
    while tried < opts.budget {
        let batch: Vec<Matrix> = stream.by_ref().take(256.min(opts.budget - tried)).collect();
        tried += batch.len();
        if let Some(m) = opts.exec.find_map_first(&batch, |a| extend_degree_one_iso(&gc, &gf, &hc, &hf, a).ok()) {
            return Some(m);
        }
    }
    None
}

fn no(invariant: &str, left: String, right: String) -> IsoResult {
    IsoResult::No { invariant: invariant.into(), left, right }
}

/// Isomorphism test: fingerprint filter, graded witness search for Carnot inputs, then
/// split off the last lower-central-series ideal and compare the cocycle spans.
pub fn isomorphic(g: &LieAlgebra, h: &LieAlgebra, opts: &SearchOptions) -> Result<IsoResult> {
    if g.dim() != h.dim() {
        return Ok(no("dim", g.dim().to_string(), h.dim().to_string()));
    }
    if g.same_structure(h) {
        return Ok(IsoResult::Yes(Matrix::identity(g.dim())));
    }
    let (fg, fh) = (fingerprint(g)?, fingerprint(h)?);
    if let Some((name, l, r)) = fg.first_difference(&fh) {
        return Ok(no(name, l, r));
    }
    if g.is_abelian() {
        // equal fingerprints: h is abelian too
        return Ok(IsoResult::Yes(Matrix::identity(g.dim())));
    }
    if let Some(m) = graded_search(g, h, opts) {
        return Ok(IsoResult::Yes(m));
    }
    let (rg, rh) = (roundtrip(g)?, roundtrip(h)?);
    let (psi, base_res) = if rg.base.same_structure(&rh.base) {
        (Matrix::identity(rg.base.dim()), None)
    } else {
        match isomorphic(&rg.base, &rh.base, opts)? {
            IsoResult::Yes(p) => (p, None),
            IsoResult::No { invariant, left, right } => {
                return Ok(no(&format!("quotient by last ideal: {invariant}"), left, right))
            }
            IsoResult::Undecided => (Matrix::identity(rg.base.dim()), Some(IsoResult::Undecided)),
        }
    };
    if let Some(r) = base_res {
        return Ok(r);
    }
    let n = rg.base.dim();
    let m = rg.cocycles.len();
    let moved: Vec<ExteriorForm> = rh.cocycles.iter().map(|c| c.pullback(&psi)).collect();
    match orbit_equivalent(&rg.base, &rg.cocycles, &moved, opts)? {
        OrbitResult::Yes(w) => {
            let f = lift_witness(&rg.base, &rg.cocycles, &moved, &w)?;
            let mut big = Matrix::identity(n + m);
            for r in 0..n {
                for c in 0..n {
                    big[(r, c)] = psi[(r, c)].clone();
                }
            }
            let pg_inv = rg.basis.inverse().ok_or(Error::Singular)?;
            let wmap = rh.basis.mul(&big).mul(&f).mul(&pg_inv);
            if !g.is_isomorphism_to(h, &wmap) {
                return Err(Error::Inconsistent);
            }
            Ok(IsoResult::Yes(wmap))
        }
        OrbitResult::No { invariant, left, right } => Ok(no(&format!("cocycle span orbit: {invariant}"), left, right)),
        OrbitResult::Undecided { .. } => Ok(IsoResult::Undecided),
    }
}

// ---------------------------------------------------------------- trees

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeStatus {
    Canonical,
    /// Isomorphic to the node with this id; `witness` maps this node's algebra onto it.
    DuplicateOf { id: usize, witness: Matrix },
    DeadEnd,
    /// Not separated from, nor matched to, some canonical node within the budget.
    Unresolved { against: usize },
}

#[derive(Clone, Debug)]
pub struct ClassificationNode {
    pub id: usize,
    pub algebra: LieAlgebra,
    pub parent: Option<usize>,
    pub cocycle_span: Vec<ExteriorForm>,
    pub status: NodeStatus,
}

impl ClassificationNode {
    pub fn is_canonical(&self) -> bool {
        matches!(self.status, NodeStatus::Canonical | NodeStatus::DeadEnd)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClassificationTree {
    pub nodes: Vec<ClassificationNode>,
}

impl ClassificationTree {
    pub fn canonical_at(&self, dim: usize) -> Vec<&ClassificationNode> {
        self.nodes.iter().filter(|n| n.algebra.dim() == dim && n.is_canonical()).collect()
    }
}

struct Candidate {
    parent: usize,
    span: Vec<ExteriorForm>,
    algebra: LieAlgebra,
    fp: Fingerprint,
}

fn check_edge(parent: &LieAlgebra, child: &LieAlgebra, m: usize) {
    assert_eq!(child.dim(), parent.dim() + m, "monotonicity: dimension");
    assert_eq!(
        child.nil_index().map(|s| s as i64),
        parent.nil_index().map(|s| s as i64 + 1),
        "monotonicity: nil-index"
    );
}

/// Appends candidates in order, deduplicating against the canonical nodes of the same dimension.
fn dedupe(tree: &mut ClassificationTree, cands: Vec<Candidate>, opts: &SearchOptions) -> Result<()> {
    for c in cands {
        let mut status = NodeStatus::Canonical;
        let others: Vec<usize> = tree
            .nodes
            .iter()
            .filter(|n| n.algebra.dim() == c.algebra.dim() && n.is_canonical())
            .map(|n| n.id)
            .collect();
        for id in others {
            let other = &tree.nodes[id];
            if fingerprint(&other.algebra)? != c.fp {
                continue;
            }
            let r = if other.parent == Some(c.parent) && other.cocycle_span.len() == c.span.len() {
                let base = &tree.nodes[c.parent].algebra;
                match orbit_equivalent(base, &c.span, &other.cocycle_span, opts)? {
                    OrbitResult::Yes(w) => IsoResult::Yes(lift_witness(base, &c.span, &other.cocycle_span, &w)?),
                    OrbitResult::No { .. } => isomorphic(&c.algebra, &other.algebra, opts)?,
                    OrbitResult::Undecided { .. } => isomorphic(&c.algebra, &other.algebra, opts)?,
                }
            } else {
                isomorphic(&c.algebra, &other.algebra, opts)?
            };
            match r {
                IsoResult::Yes(w) => {
                    status = NodeStatus::DuplicateOf { id, witness: w };
                    break;
                }
                IsoResult::No { .. } => {}
                IsoResult::Undecided => {
                    status = NodeStatus::Unresolved { against: id };
                }
            }
        }
        let id = tree.nodes.len();
        tree.nodes.push(ClassificationNode { id, algebra: c.algebra, parent: Some(c.parent), cocycle_span: c.span, status });
    }
    Ok(())
}

fn p1_points() -> Vec<(Scalar, Scalar)> {
    vec![(one(), zero()), (zero(), one()), (one(), one()), (one(), -one()), (one(), int(2))]
}

/// Naturally graded filiform algebras up to `max_dim`, grown from `abelian(2)` by
/// one-dimensional extensions in the top weight.
pub fn enumerate_graded_filiform(max_dim: usize, opts: &SearchOptions) -> Result<ClassificationTree> {
    if max_dim < 3 {
        return Err(Error::Invalid("max_dim must be at least 3".into()));
    }
    let mut tree = ClassificationTree::default();
    tree.nodes.push(ClassificationNode {
        id: 0,
        algebra: LieAlgebra::abelian(2).with_weights(vec![1, 1]),
        parent: None,
        cocycle_span: Vec::new(),
        status: NodeStatus::Canonical,
    });
    for dim in 2..=max_dim {
        let level: Vec<usize> = tree
            .nodes
            .iter()
            .filter(|n| n.algebra.dim() == dim && matches!(n.status, NodeStatus::Canonical))
            .map(|n| n.id)
            .collect();
        let mut cands = Vec::new();
        for id in level {
            let g = tree.nodes[id].algebra.clone();
            let s = g.nil_index().ok_or(Error::NotNilpotent)? + 1;
            let hc = homogeneous_cohomology(&g, 2, dim)?;
            let spans: Vec<Vec<ExteriorForm>> = match hc.dim() {
                0 => Vec::new(),
                1 => vec![vec![hc.representatives[0].clone()]],
                _ => p1_points()
                    .into_iter()
                    .map(|(a, b)| vec![hc.representatives[0].scale(&a).add(&hc.representatives[1].scale(&b))])
                    .collect(),
            };
            let spans: Vec<_> = spans.into_iter().filter(|sp| set_has_filtration_s(&g, sp, s).unwrap_or(false)).collect();
            if spans.is_empty() {
                tree.nodes[id].status = NodeStatus::DeadEnd;
                continue;
            }
            if dim == max_dim {
                continue;
            }
            let built = opts.exec.map(&spans, |sp| -> Result<Candidate> {
                let algebra = extend(&g, sp)?;
                let fp = fingerprint(&algebra)?;
                Ok(Candidate { parent: id, span: sp.clone(), algebra, fp })
            });
            for c in built {
                let c = c?;
                check_edge(&g, &c.algebra, 1);
                cands.push(c);
            }
        }
        dedupe(&mut tree, cands, opts)?;
    }
    Ok(tree)
}

/// Sample points of `Gr(m, K^h)`: RREF charts with free entries from `values`.
pub fn grassmannian_grid(h: usize, m: usize, values: &[Scalar]) -> Vec<Vec<Vec<Scalar>>> {
    let mut out = Vec::new();
    if m == 0 || m > h {
        return out;
    }
    for pivots in combinations(h, m) {
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|r| ((pivots[r] + 1)..h).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = values.len().pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![zero(); h]; m];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = one();
            }
            for &(r, c) in &free {
                rows[r][c] = values[code % values.len()].clone();
                code /= values.len();
            }
            out.push(rows);
        }
    }
    out
}

/// Nilpotent algebras of dimension `<= max_dim` (at most 4) by the recurrent method.
pub fn classify_nilpotent_small(max_dim: usize, opts: &SearchOptions) -> Result<ClassificationTree> {
    if max_dim > 4 {
        return Err(Error::CapExceeded(format!("classify_nilpotent_small supports max_dim <= 4, got {max_dim}")));
    }
    let mut tree = ClassificationTree::default();
    for n in 1..=max_dim {
        let mut cands = Vec::new();
        let bases: Vec<usize> =
            tree.nodes.iter().filter(|x| (2..n).contains(&x.algebra.dim()) && x.is_canonical()).map(|x| x.id).collect();
        for id in bases {
            let g = tree.nodes[id].algebra.clone();
            let m = n - g.dim();
            let s = g.nil_index().ok_or(Error::NotNilpotent)? + 1;
            let hc = cohomology(&g, 2)?;
            let values = if m == 1 { vec![zero(), one(), -one(), int(2)] } else { vec![zero(), one(), -one()] };
            let spans: Vec<Vec<ExteriorForm>> = grassmannian_grid(hc.dim(), m, &values)
                .into_iter()
                .map(|rows| rows.iter().map(|r| hc.form_from_coordinates(r)).collect())
                .filter(|sp: &Vec<ExteriorForm>| set_has_filtration_s(&g, sp, s).unwrap_or(false))
                .collect();
            let built = opts.exec.map(&spans, |sp| -> Result<Candidate> {
                let algebra = extend(&g, sp)?;
                let fp = fingerprint(&algebra)?;
                Ok(Candidate { parent: id, span: sp.clone(), algebra, fp })
            });
            for c in built {
                let c = c?;
                check_edge(&g, &c.algebra, m);
                cands.push(c);
            }
        }
        let id = tree.nodes.len();
        tree.nodes.push(ClassificationNode {
            id,
            algebra: LieAlgebra::abelian(n),
            parent: None,
            cocycle_span: Vec::new(),
            status: NodeStatus::Canonical,
        });
        dedupe(&mut tree, cands, opts)?;
    }
    Ok(tree)
}
