//! Quiver representations over the rationals.
//!
//! Hom spaces come from solving the commuting-square system directly; Ext¹
//! over a path algebra is read off the Euler form. Indecomposables of Dynkin
//! quivers are built from simples with BGP reflection functors, and the AR
//! translate goes through the Coxeter transform plus reconstruction.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bound::MonomialAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{parse_q, q, render_q, span_rank, Matrix, Q};
use crate::quiver::{classify_diagram, positive_roots, EulerData, NamedQuiver, Quiver};

/// A representation: a vector space per vertex and a linear map per arrow.
///
/// The map of an arrow `i -> j` is a `dims[j] x dims[i]` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    quiver: Quiver,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl Representation {
    pub fn new(quiver: Quiver, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.n() {
            return Err(Error::ShapeMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.n()
            )));
        }
        if mats.len() != quiver.arrows().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} arrows",
                mats.len(),
                quiver.arrows().len()
            )));
        }
        for (a, (&(s, t), m)) in quiver.arrows().iter().zip(&mats).enumerate() {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {} is {}x{}, expected {}x{}",
                    a + 1,
                    m.rows(),
                    m.cols(),
                    dims[t],
                    dims[s]
                )));
            }
        }
        Ok(Self { quiver, dims, mats })
    }

    pub fn zero(quiver: &Quiver) -> Self {
        let dims = vec![0; quiver.n()];
        let mats = quiver
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(0, 0))
            .collect();
        Self {
            quiver: quiver.clone(),
            dims,
            mats,
        }
    }

    pub fn simple(quiver: &Quiver, v: usize) -> Self {
        let mut dims = vec![0; quiver.n()];
        dims[v] = 1;
        let mats = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::zeros(dims[t], dims[s]))
            .collect();
        Self {
            quiver: quiver.clone(),
            dims,
            mats,
        }
    }

    /// Indecomposable projective at `v` over the path algebra of an acyclic
    /// quiver.
    pub fn projective(quiver: &Quiver, v: usize) -> Result<Self> {
        Ok(MonomialAlgebra::path_algebra(quiver)?
            .projective(v)
            .into_inner())
    }

    /// Indecomposable injective at `v`, as the dual of a projective over the
    /// opposite quiver.
    pub fn injective(quiver: &Quiver, v: usize) -> Result<Self> {
        Ok(Self::projective(&quiver.opposite(), v)?.dual())
    }

    /// `D = Hom_k(-, k)`, a representation of the opposite quiver.
    pub fn dual(&self) -> Self {
        Self {
            quiver: self.quiver.opposite(),
            dims: self.dims.clone(),
            mats: self.mats.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        same_quiver(self, other)?;
        Ok(Self {
            quiver: self.quiver.clone(),
            dims: self
                .dims
                .iter()
                .zip(&other.dims)
                .map(|(a, b)| a + b)
                .collect(),
            mats: self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        })
    }

    pub fn direct_sum_all<'a>(
        quiver: &Quiver,
        parts: impl IntoIterator<Item = &'a Self>,
    ) -> Result<Self> {
        parts
            .into_iter()
            .try_fold(Self::zero(quiver), |acc, p| acc.direct_sum(p))
    }

    /// Transports the structure along vertexwise isomorphisms `g_v`:
    /// the new arrow map of `i -> j` is `g_j * M_a * g_i^{-1}`.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<Self> {
        let inv: Vec<Matrix> = g
            .iter()
            .map(|m| {
                m.inverse()
                    .ok_or_else(|| Error::ShapeMismatch("change of basis not invertible".into()))
            })
            .collect::<Result<_>>()?;
        let mats = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(&(s, t), m)| g[t].mul(m).mul(&inv[s]))
            .collect();
        Self::new(self.quiver.clone(), self.dims.clone(), mats)
    }

    /// Restriction of the structure to a subrepresentation spanned by the
    /// columns of `basis[v]` at each vertex. Fails if the span is not stable.
    pub fn subrepresentation(&self, basis: &[Matrix]) -> Result<Self> {
        let dims: Vec<usize> = basis.iter().map(Matrix::cols).collect();
        let mut mats = Vec::with_capacity(self.mats.len());
        for (&(s, t), m) in self.quiver.arrows().iter().zip(&self.mats) {
            let image = m.mul(&basis[s]);
            let coords = basis[t].solve(&image).ok_or_else(|| {
                Error::ShapeMismatch("subspace is not a subrepresentation".into())
            })?;
            mats.push(coords);
        }
        Self::new(self.quiver.clone(), dims, mats)
    }

    pub fn to_file(&self) -> RepresentationFile {
        RepresentationFile {
            dims: self.dims.clone(),
            mats: self
                .mats
                .iter()
                .enumerate()
                .map(|(a, m)| {
                    let rows = (0..m.rows())
                        .map(|r| (0..m.cols()).map(|c| render_q(m.get(r, c))).collect())
                        .collect();
                    ((a + 1).to_string(), rows)
                })
                .collect(),
        }
    }

    pub fn from_file(quiver: &Quiver, file: &RepresentationFile) -> Result<Self> {
        let mut mats = Vec::with_capacity(quiver.arrows().len());
        for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
            let (rows, cols) = (file.dims.get(t).copied(), file.dims.get(s).copied());
            let (Some(rows), Some(cols)) = (rows, cols) else {
                return Err(Error::Parse("dimension vector too short".into()));
            };
            let m = match file.mats.get(&(a + 1).to_string()) {
                None => Matrix::zeros(rows, cols),
                Some(entries) => {
                    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
                        return Err(Error::Parse(format!("arrow {} has the wrong shape", a + 1)));
                    }
                    let data = entries
                        .iter()
                        .flatten()
                        .map(|s| {
                            parse_q(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Matrix::from_rows(rows, cols, data)
                }
            };
            mats.push(m);
        }
        Self::new(quiver.clone(), file.dims.clone(), mats)
    }
}

/// JSON form: `{"dims": [...], "mats": {"1": [["p/q", ...], ...]}}` with
/// 1-based arrow indices as keys. Missing arrows are zero maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationFile {
    pub dims: Vec<usize>,
    pub mats: BTreeMap<String, Vec<Vec<String>>>,
}

fn same_quiver(m: &Representation, n: &Representation) -> Result<()> {
    if m.quiver != n.quiver {
        return Err(Error::ShapeMismatch(
            "representations of different quivers".into(),
        ));
    }
    Ok(())
}

/// A basis of `Hom(M, N)`: each element is one matrix per vertex,
/// `dims_N[v] x dims_M[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub dim: usize,
    pub basis: Vec<Vec<Matrix>>,
}

impl HomSpace {
    /// Linear combination of basis elements.
    pub fn combine(&self, coeffs: &[Q]) -> Vec<Matrix> {
        assert_eq!(coeffs.len(), self.dim);
        let mut out: Vec<Matrix> = self.basis[0]
            .iter()
            .map(|m| Matrix::zeros(m.rows(), m.cols()))
            .collect();
        for (c, f) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, fv) in out.iter_mut().zip(f) {
                *o = o.add(&fv.scale(c));
            }
        }
        out
    }
}

/// Solves `N_a f_i = f_j M_a` for every arrow `a: i -> j`.
pub fn hom(m: &Representation, n: &Representation) -> Result<HomSpace> {
    same_quiver(m, n)?;
    let quiver = &m.quiver;
    let nv = quiver.n();
    let mut offsets = Vec::with_capacity(nv + 1);
    offsets.push(0);
    for v in 0..nv {
        offsets.push(offsets[v] + n.dims[v] * m.dims[v]);
    }
    let unknowns = offsets[nv];
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims[v] + c;

    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (a, &(i, j)) in quiver.arrows().iter().enumerate() {
        let (ma, na) = (&m.mats[a], &n.mats[a]);
        for r in 0..n.dims[j] {
            for c in 0..m.dims[i] {
                let mut row = vec![Q::zero(); unknowns];
                // (N_a f_i)[r][c] = sum_s N_a[r][s] f_i[s][c]
                for s in 0..n.dims[i] {
                    let x = na.get(r, s);
                    if !x.is_zero() {
                        row[var(i, s, c)] += x;
                    }
                }
                // (f_j M_a)[r][c] = sum_t f_j[r][t] M_a[t][c]
                for t in 0..m.dims[j] {
                    let x = ma.get(t, c);
                    if !x.is_zero() {
                        row[var(j, r, t)] -= x;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::identity(unknowns)
    } else {
        let data = rows.iter().flatten().cloned().collect();
        Matrix::from_rows(rows.len(), unknowns, data).kernel()
    };
    let basis = (0..kernel.cols())
        .map(|k| {
            (0..nv)
                .map(|v| {
                    Matrix::from_fn(n.dims[v], m.dims[v], |r, c| {
                        kernel.get(var(v, r, c), k).clone()
                    })
                })
                .collect()
        })
        .collect();
    Ok(HomSpace {
        dim: kernel.cols(),
        basis,
    })
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom(m, n)?.dim)
}

/// `dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>` over a path algebra.
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<usize> {
    same_quiver(m, n)?;
    let euler = EulerData::new(&m.quiver)?;
    ext1_dim_with(&euler, m, n)
}

pub fn ext1_dim_with(euler: &EulerData, m: &Representation, n: &Representation) -> Result<usize> {
    let h = hom_dim(m, n)? as i64;
    let value = h - euler.form(&m.dim_vector(), &n.dim_vector())?;
    usize::try_from(value).map_err(|_| Error::NegativeExt {
        left: m.dims.clone(),
        right: n.dims.clone(),
        value,
    })
}

pub fn is_rigid(m: &Representation) -> Result<bool> {
    Ok(ext1_dim(m, m)? == 0)
}

/// Composes two vertexwise maps `g ∘ f`.
pub fn compose(g: &[Matrix], f: &[Matrix]) -> Vec<Matrix> {
    g.iter().zip(f).map(|(a, b)| a.mul(b)).collect()
}

fn is_vertexwise_invertible(f: &[Matrix]) -> bool {
    f.iter()
        .all(|m| m.rows() == m.cols() && (m.rows() == 0 || !m.determinant().is_zero()))
}

const RANDOM_ISO_TRIALS: usize = 24;
const GRID_FALLBACK_MAX_HOM: usize = 4;
const GRID_FALLBACK_MAX_POINTS: usize = 1 << 20;

/// Whether `M ≅ N`: equal dimension vectors and a Hom element invertible at
/// every vertex.
///
/// Random integer combinations of the Hom basis are tried first. When
/// `dim Hom <= 4` the search then falls back to every point of the grid
/// `{0..=D}^dim Hom`, `D = total dimension`; the product of the vertex
/// determinants is a polynomial of degree `D`, so a nonzero value exists on
/// that grid whenever it is not identically zero.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    same_quiver(m, n)?;
    if m.dims != n.dims {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let h = hom(m, n)?;
    if h.dim == 0 {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f15);
    for _ in 0..RANDOM_ISO_TRIALS {
        let coeffs: Vec<Q> = (0..h.dim).map(|_| q(rng.gen_range(-50..=50))).collect();
        if is_vertexwise_invertible(&h.combine(&coeffs)) {
            return Ok(true);
        }
    }
    if h.dim <= GRID_FALLBACK_MAX_HOM {
        let side = m.total_dim() + 1;
        let points = side.checked_pow(h.dim as u32).unwrap_or(usize::MAX);
        if points <= GRID_FALLBACK_MAX_POINTS {
            for idx in 0..points {
                let mut rest = idx;
                let coeffs: Vec<Q> = (0..h.dim)
                    .map(|_| {
                        let c = rest % side;
                        rest /= side;
                        q(c as i64)
                    })
                    .collect();
                if is_vertexwise_invertible(&h.combine(&coeffs)) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// BGP reflection at a sink `k`: replaces `V_k` by the kernel of
/// `⊕_{a: i -> k} V_i -> V_k`. Returns a representation of `Q.reflect(k)`.
pub fn sink_reflection(m: &Representation, k: usize) -> Result<Representation> {
    let q = &m.quiver;
    if !q.is_sink(k) {
        return Err(Error::ShapeMismatch(format!(
            "vertex {} is not a sink",
            k + 1
        )));
    }
    let incoming: Vec<usize> = q.incoming(k).collect();
    let blocks: Vec<Matrix> = incoming.iter().map(|&a| m.mats[a].clone()).collect();
    let h = Matrix::hstack(&blocks, m.dims[k]);
    let kernel = h.kernel();
    let mut dims = m.dims.clone();
    dims[k] = kernel.cols();
    let mut mats = m.mats.clone();
    let mut r0 = 0;
    for &a in &incoming {
        let src = q.arrows()[a].0;
        mats[a] = kernel.block(r0, m.dims[src], 0, kernel.cols());
        r0 += m.dims[src];
    }
    Representation::new(q.reflect(k), dims, mats)
}

/// BGP reflection at a source `k`: replaces `V_k` by the cokernel of
/// `V_k -> ⊕_{a: k -> i} V_i`. Returns a representation of `Q.reflect(k)`.
pub fn source_reflection(m: &Representation, k: usize) -> Result<Representation> {
    let q = &m.quiver;
    if !q.is_source(k) {
        return Err(Error::ShapeMismatch(format!(
            "vertex {} is not a source",
            k + 1
        )));
    }
    let outgoing: Vec<usize> = q.outgoing(k).collect();
    let blocks: Vec<Matrix> = outgoing.iter().map(|&a| m.mats[a].clone()).collect();
    let h = Matrix::vstack(&blocks, m.dims[k]);
    let quotient = h.cokernel_map();
    let mut dims = m.dims.clone();
    dims[k] = quotient.rows();
    let mut mats = m.mats.clone();
    let mut c0 = 0;
    for &a in &outgoing {
        let tgt = q.arrows()[a].1;
        mats[a] = quotient.block(0, quotient.rows(), c0, m.dims[tgt]);
        c0 += m.dims[tgt];
    }
    Representation::new(q.reflect(k), dims, mats)
}

fn require_dynkin(quiver: &Quiver) -> Result<()> {
    let ty = classify_diagram(quiver)?;
    if !ty.is_dynkin() {
        return Err(Error::NotDynkin(ty.to_string()));
    }
    if !quiver.is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    Ok(())
}

fn reflect_root(quiver: &Quiver, d: &[i64], k: usize) -> Vec<i64> {
    let neighbours: i64 = quiver
        .arrows()
        .iter()
        .filter_map(|&(s, t)| {
            if s == k {
                Some(d[t])
            } else if t == k {
                Some(d[s])
            } else {
                None
            }
        })
        .sum();
    let mut out = d.to_vec();
    out[k] = neighbours - d[k];
    out
}

/// The indecomposable representation of a Dynkin quiver with dimension
/// vector `d`.
///
/// Sink reflections are applied in an admissible order, tracking `d`, until
/// it becomes the simple projective at the sink about to be reflected; the
/// simple is then carried back with source reflections.
pub fn indecomposable_from_root(quiver: &Quiver, d: &[i64]) -> Result<Representation> {
    require_dynkin(quiver)?;
    if d.len() != quiver.n() {
        return Err(Error::LengthMismatch {
            expected: quiver.n(),
            got: d.len(),
        });
    }
    if !positive_roots(quiver)?.iter().any(|r| r == d) {
        return Err(Error::NotARoot(d.to_vec()));
    }
    let mut sinks: Vec<usize> = quiver.topological_order().expect("acyclic");
    sinks.reverse();
    let mut steps: Vec<usize> = Vec::new();
    let mut current_q = quiver.clone();
    let mut current_d = d.to_vec();
    let limit = 4 * quiver.n() * (quiver.n() + 1) + 8;
    for round in 0.. {
        if round > limit {
            return Err(Error::NotARoot(d.to_vec()));
        }
        let k = sinks[round % sinks.len()];
        debug_assert!(current_q.is_sink(k));
        let is_simple = current_d
            .iter()
            .enumerate()
            .all(|(v, &x)| x == i64::from(v == k));
        if is_simple {
            break;
        }
        current_d = reflect_root(&current_q, &current_d, k);
        if current_d.iter().any(|&x| x < 0) {
            return Err(Error::NotARoot(d.to_vec()));
        }
        current_q = current_q.reflect(k);
        steps.push(k);
    }
    let k_final = sinks[steps.len() % sinks.len()];
    let mut m = Representation::simple(&current_q, k_final);
    for &k in steps.iter().rev() {
        m = source_reflection(&m, k)?;
    }
    debug_assert_eq!(&m.quiver, quiver);
    if m.dim_vector() != d {
        return Err(Error::Verification(format!(
            "reflection functors produced {:?} for root {:?}",
            m.dims, d
        )));
    }
    Ok(m)
}

/// All indecomposables of a Dynkin quiver, one per positive root.
pub fn dynkin_indecomposables(quiver: &Quiver) -> Result<Vec<Representation>> {
    positive_roots(quiver)?
        .iter()
        .map(|r| indecomposable_from_root(quiver, r))
        .collect()
}

fn is_projective_dims(quiver: &Quiver, dims: &[usize]) -> bool {
    let paths = quiver.path_counts().expect("acyclic");
    (0..quiver.n()).any(|i| paths[i] == dims)
}

fn is_injective_dims(quiver: &Quiver, dims: &[usize]) -> bool {
    let paths = quiver.path_counts().expect("acyclic");
    (0..quiver.n()).any(|i| (0..quiver.n()).all(|v| paths[v][i] == dims[v]))
}

/// Whether an indecomposable of a Dynkin quiver is projective.
pub fn is_projective(m: &Representation) -> bool {
    m.quiver.is_acyclic() && is_projective_dims(&m.quiver, &m.dims)
}

/// Whether an indecomposable of a Dynkin quiver is injective.
pub fn is_injective(m: &Representation) -> bool {
    m.quiver.is_acyclic() && is_injective_dims(&m.quiver, &m.dims)
}

fn require_brick(m: &Representation) -> Result<()> {
    if m.is_zero() || hom_dim(m, m)? != 1 {
        return Err(Error::Decomposable(m.dims.clone()));
    }
    Ok(())
}

/// AR translation of an indecomposable over a Dynkin quiver; `None` for
/// projectives.
pub fn tau(m: &Representation) -> Result<Option<Representation>> {
    require_dynkin(&m.quiver)?;
    require_brick(m)?;
    if is_projective(m) {
        return Ok(None);
    }
    let euler = EulerData::new(&m.quiver)?;
    let d = euler.coxeter(&m.dim_vector())?;
    indecomposable_from_root(&m.quiver, &d).map(Some)
}

/// Inverse AR translation; `None` for injectives.
pub fn tau_inverse(m: &Representation) -> Result<Option<Representation>> {
    require_dynkin(&m.quiver)?;
    require_brick(m)?;
    if is_injective(m) {
        return Ok(None);
    }
    let euler = EulerData::new(&m.quiver)?;
    let d = euler.coxeter_inverse(&m.dim_vector())?;
    indecomposable_from_root(&m.quiver, &d).map(Some)
}

/// Modules from the rank-two exceptional tube of `~A(2,1)`.
#[derive(Clone, Debug)]
pub struct TubeModules {
    /// Quasi-simple `S2`, the simple at the middle vertex of the long path.
    pub r1: Representation,
    /// Quasi-simple `k -> 0 -> k` with `1 -> 3` the identity.
    pub r2: Representation,
    /// Quasi-length two, `0 -> r1 -> m -> r2 -> 0`, dimension vector `(1,1,1)`.
    pub m: Representation,
}

/// The quasi-simples and the quasi-length-two module of the rank-two tube of
/// the acyclic quiver `1 -> 2 -> 3`, `1 -> 3`. Every claimed property is
/// re-verified before returning.
pub fn atilde21_tube_modules() -> Result<TubeModules> {
    let quiver = NamedQuiver::Atilde21.quiver();
    // arrows: a = 1->2, b = 2->3, c = 1->3
    let one = || Matrix::from_i64(1, 1, &[&[1]]);
    let r1 = Representation::simple(&quiver, 1);
    let r2 = Representation::new(
        quiver.clone(),
        vec![1, 0, 1],
        vec![Matrix::zeros(0, 1), Matrix::zeros(1, 0), one()],
    )?;
    let m = Representation::new(
        quiver.clone(),
        vec![1, 1, 1],
        vec![one(), Matrix::zeros(1, 1), one()],
    )?;
    let euler = EulerData::new(&quiver)?;
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Verification(format!(
                "tube module check failed: {what}"
            )))
        }
    };
    check(m.dim_vector() == vec![1, 1, 1], "dim M = (1,1,1)")?;
    check(hom_dim(&m, &m)? == 1, "End(M) = k")?;
    check(ext1_dim_with(&euler, &m, &m)? == 1, "Ext(M, M) = k")?;
    check(ext1_dim_with(&euler, &r1, &r2)? == 1, "Ext(R1, R2) = k")?;
    check(ext1_dim_with(&euler, &r2, &r1)? == 1, "Ext(R2, R1) = k")?;
    for r in [&r1, &r2] {
        check(
            hom_dim(r, r)? == 1 && ext1_dim_with(&euler, r, r)? == 0,
            "quasi-simples are exceptional",
        )?;
        check(
            euler.form(&[1, 1, 1], &r.dim_vector())? == 0,
            "quasi-simples are regular",
        )?;
    }
    // r1 is the socle of m and r2 its top
    check(
        hom_dim(&r1, &m)? == 1 && hom_dim(&m, &r2)? == 1,
        "M extends R2 by R1",
    )?;
    check(
        euler.coxeter(&r1.dim_vector())? == r2.dim_vector()
            && euler.coxeter(&r2.dim_vector())? == r1.dim_vector(),
        "tau swaps the quasi-simples",
    )?;
    Ok(TubeModules { r1, r2, m })
}

/// Rank of a family of Hom elements, each flattened to one long vector.
pub fn hom_family_rank(maps: &[Vec<Matrix>]) -> usize {
    let vectors: Vec<Vec<Q>> = maps
        .iter()
        .map(|f| f.iter().flat_map(Matrix::flatten).collect())
        .collect();
    span_rank(&vectors)
}

/// Identity endomorphism.
pub fn identity(m: &Representation) -> Vec<Matrix> {
    m.dims.iter().map(|&d| Matrix::identity(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::linear(2)
    }

    #[test]
    fn hom_examples() {
        let q = a2();
        let s1 = Representation::simple(&q, 0);
        let p1 = Representation::projective(&q, 0).unwrap();
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(hom_dim(&s1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&p1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&s1, &p1).unwrap(), 0);
        let other = Representation::simple(&Quiver::linear(3), 0);
        assert!(matches!(hom(&s1, &other), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn hom_basis_commutes() {
        let q = Quiver::linear(3);
        let p = Representation::projective(&q, 0).unwrap();
        let m = p.direct_sum(&Representation::simple(&q, 1)).unwrap();
        let h = hom(&m, &m).unwrap();
        for f in &h.basis {
            for (a, &(i, j)) in q.arrows().iter().enumerate() {
                assert_eq!(m.mats()[a].mul(&f[i]), f[j].mul(&m.mats()[a]));
            }
        }
        assert_eq!(hom_family_rank(&h.basis), h.dim);
    }

    #[test]
    fn ext_examples() {
        let q = a2();
        let s1 = Representation::simple(&q, 0);
        let s2 = Representation::simple(&q, 1);
        // 0 -> S2 -> P1 -> S1 -> 0
        assert_eq!(ext1_dim(&s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&s2, &s1).unwrap(), 0);
        let p1 = Representation::projective(&q, 0).unwrap();
        for x in [&s1, &s2, &p1] {
            assert_eq!(ext1_dim(&p1, x).unwrap(), 0);
            assert_eq!(ext1_dim(&s2, x).unwrap(), 0);
        }
        assert!(is_rigid(&s1).unwrap() && is_rigid(&s2).unwrap());
    }

    #[test]
    fn tube_module_is_not_rigid() {
        let t = atilde21_tube_modules().unwrap();
        assert_eq!(t.m.dims(), &[1, 1, 1]);
        assert_eq!(ext1_dim(&t.m, &t.m).unwrap(), 1);
        assert!(!is_rigid(&t.m).unwrap());
        assert_eq!(
            ext1_dim(&t.r1, &t.r2).unwrap() + ext1_dim(&t.r2, &t.r1).unwrap(),
            2
        );
    }

    #[test]
    fn reflection_builds_indecomposables() {
        let q = a2();
        let p1 = indecomposable_from_root(&q, &[1, 1]).unwrap();
        assert!(!p1.mats()[0].is_zero());
        assert!(is_isomorphic(&p1, &Representation::projective(&q, 0).unwrap()).unwrap());
        let s2 = indecomposable_from_root(&q, &[0, 1]).unwrap();
        assert_eq!(s2, Representation::simple(&q, 1));
        assert!(matches!(
            indecomposable_from_root(&q, &[2, 1]),
            Err(Error::NotARoot(_))
        ));
        for r in positive_roots(&Quiver::linear(3)).unwrap() {
            let m = indecomposable_from_root(&Quiver::linear(3), &r).unwrap();
            assert_eq!(hom_dim(&m, &m).unwrap(), 1);
            assert!(is_rigid(&m).unwrap());
        }
    }

    #[test]
    fn reflection_on_non_sink_fails() {
        let q = a2();
        let s = Representation::simple(&q, 0);
        assert!(sink_reflection(&s, 0).is_err());
        assert!(source_reflection(&s, 1).is_err());
    }

    #[test]
    fn tau_orbit_on_a2() {
        // 1 -> 2: tau S1 = S2 = P2, tau P1 = 0, tau P2 = 0
        let q = a2();
        let s1 = Representation::simple(&q, 0);
        let t = tau(&s1).unwrap().unwrap();
        assert_eq!(t.dims(), &[0, 1]);
        assert!(tau(&t).unwrap().is_none());
        let p1 = Representation::projective(&q, 0).unwrap();
        assert!(tau(&p1).unwrap().is_none());
        let sum = s1.direct_sum(&t).unwrap();
        assert!(matches!(tau(&sum), Err(Error::Decomposable(_))));
        let at = atilde21_tube_modules().unwrap();
        assert!(matches!(tau(&at.m), Err(Error::NotDynkin(_))));
    }

    #[test]
    fn isomorphism_examples() {
        let q = a2();
        let p1 = Representation::projective(&q, 0).unwrap();
        assert!(is_isomorphic(&p1, &p1).unwrap());
        let split = Representation::simple(&q, 0)
            .direct_sum(&Representation::simple(&q, 1))
            .unwrap();
        assert!(!is_isomorphic(&split, &p1).unwrap());
        let g = vec![
            Matrix::from_i64(1, 1, &[&[3]]),
            Matrix::from_i64(1, 1, &[&[-2]]),
        ];
        assert!(is_isomorphic(&p1, &p1.conjugate(&g).unwrap()).unwrap());
    }

    #[test]
    fn file_roundtrip() {
        let q = Quiver::linear(3);
        let m = indecomposable_from_root(&q, &[1, 1, 1]).unwrap();
        let json = serde_json::to_string(&m.to_file()).unwrap();
        let back: RepresentationFile = serde_json::from_str(&json).unwrap();
        assert_eq!(Representation::from_file(&q, &back).unwrap(), m);
        let bad = RepresentationFile {
            dims: vec![1, 1, 0],
            mats: [("1".to_string(), vec![vec!["1/0".to_string()]])].into(),
        };
        assert!(matches!(
            Representation::from_file(&q, &bad),
            Err(Error::Parse(_))
        ));
    }
}
