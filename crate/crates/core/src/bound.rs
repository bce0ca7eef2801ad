//! Monomial bound quiver algebras: path bases, projective and injective
//! modules, syzygies and Ext¹ via a projective presentation.
//!
//! Paths are written in traversal order, so the relation `[a, b]` kills the
//! composite "first `a`, then `b`".

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{span_rank, Matrix, Q};
use crate::quiver::Quiver;
use crate::rep::{
    atilde21_tube_modules, compose, ext1_dim, hom, hom_dim, is_isomorphic, HomSpace, Representation,
};

/// Longest path the basis enumeration accepts before declaring the algebra
/// infinite-dimensional.
const MAX_PATH_LEN: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialAlgebra {
    quiver: Quiver,
    relations: Vec<Vec<usize>>,
    basis: Vec<Path>,
}

impl MonomialAlgebra {
    pub fn new(quiver: Quiver, relations: Vec<Vec<usize>>) -> Result<Self> {
        let arrows = quiver.arrows();
        for rel in &relations {
            if rel.len() < 2 {
                return Err(Error::NotAdmissible(format!(
                    "relation {rel:?} has length below two"
                )));
            }
            if let Some(&a) = rel.iter().find(|&&a| a >= arrows.len()) {
                return Err(Error::IndexOutOfRange {
                    index: a,
                    n: arrows.len(),
                });
            }
            if rel.windows(2).any(|w| arrows[w[0]].1 != arrows[w[1]].0) {
                return Err(Error::NotAdmissible(format!(
                    "relation {rel:?} is not a path"
                )));
            }
        }
        let mut alg = Self {
            quiver,
            relations,
            basis: Vec::new(),
        };
        alg.basis = alg.enumerate_basis()?;
        Ok(alg)
    }

    /// The path algebra of an acyclic quiver.
    pub fn path_algebra(quiver: &Quiver) -> Result<Self> {
        Self::new(quiver.clone(), Vec::new())
    }

    fn enumerate_basis(&self) -> Result<Vec<Path>> {
        let mut basis: Vec<Path> = (0..self.quiver.n())
            .map(|v| Path {
                start: v,
                arrows: Vec::new(),
            })
            .collect();
        let mut frontier = basis.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let end = self.end(p);
                for a in self.quiver.outgoing(end) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    if self.ends_in_relation(&arrows) {
                        continue;
                    }
                    if arrows.len() > MAX_PATH_LEN {
                        return Err(Error::NotAdmissible(
                            "nonzero paths of unbounded length".into(),
                        ));
                    }
                    next.push(Path {
                        start: p.start,
                        arrows,
                    });
                }
            }
            basis.extend(next.iter().cloned());
            frontier = next;
        }
        basis.sort();
        Ok(basis)
    }

    fn ends_in_relation(&self, arrows: &[usize]) -> bool {
        self.relations.iter().any(|r| arrows.ends_with(r))
    }

    fn contains_relation(&self, arrows: &[usize]) -> bool {
        self.relations
            .iter()
            .any(|r| arrows.windows(r.len()).any(|w| w == r.as_slice()))
    }

    pub fn end(&self, p: &Path) -> usize {
        p.arrows
            .last()
            .map_or(p.start, |&a| self.quiver.arrows()[a].1)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn opposite(&self) -> Self {
        let relations = self
            .relations
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        Self::new(self.quiver.opposite(), relations).expect("opposite of an admissible algebra")
    }

    /// The projective `P_i`, spanned by the basis paths starting at `i`;
    /// arrows act by appending.
    pub fn projective(&self, i: usize) -> BQAModule {
        let paths: Vec<&Path> = self.basis.iter().filter(|p| p.start == i).collect();
        let mut by_vertex: Vec<Vec<&Path>> = vec![Vec::new(); self.quiver.n()];
        for p in &paths {
            by_vertex[self.end(p)].push(p);
        }
        let index: HashMap<&Path, usize> = by_vertex
            .iter()
            .flat_map(|ps| ps.iter().enumerate().map(|(k, &p)| (p, k)))
            .collect();
        let dims: Vec<usize> = by_vertex.iter().map(Vec::len).collect();
        let mats = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Matrix::zeros(dims[t], dims[s]);
                for (col, p) in by_vertex[s].iter().enumerate() {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    if self.contains_relation(&arrows) {
                        continue;
                    }
                    let ext = Path { start: i, arrows };
                    if let Some(&row) = index.get(&ext) {
                        m.set(row, col, Q::from_integer(1.into()));
                    }
                }
                m
            })
            .collect();
        let rep = Representation::new(self.quiver.clone(), dims, mats).expect("path module shape");
        BQAModule(rep)
    }

    /// The injective `I_i`, dual to the projective of the opposite algebra.
    pub fn injective(&self, i: usize) -> BQAModule {
        BQAModule(self.opposite().projective(i).0.dual())
    }

    pub fn simple(&self, v: usize) -> BQAModule {
        BQAModule(Representation::simple(&self.quiver, v))
    }

    /// Wraps a representation after checking every relation composite
    /// vanishes.
    pub fn module(&self, rep: Representation) -> Result<BQAModule> {
        if rep.quiver() != &self.quiver {
            return Err(Error::ShapeMismatch(
                "module over a different quiver".into(),
            ));
        }
        for rel in &self.relations {
            if !self.path_action(&rep, rel).is_zero() {
                return Err(Error::RelationViolated(format!(
                    "composite along arrows {:?} is nonzero",
                    rel.iter().map(|a| a + 1).collect::<Vec<_>>()
                )));
            }
        }
        Ok(BQAModule(rep))
    }

    /// The linear map of a path on a representation.
    fn path_action(&self, rep: &Representation, arrows: &[usize]) -> Matrix {
        let start = arrows.first().map_or(0, |&a| self.quiver.arrows()[a].0);
        let mut m = Matrix::identity(rep.dims()[start]);
        for &a in arrows {
            m = rep.mats()[a].mul(&m);
        }
        m
    }

    /// Top of `M` at each vertex: vectors completing a basis of the radical
    /// (sum of images of incoming arrows) to a basis of `M_v`.
    fn top_vectors(&self, m: &BQAModule) -> Vec<Vec<Matrix>> {
        let rep = &m.0;
        (0..self.quiver.n())
            .map(|v| {
                let d = rep.dims()[v];
                let images: Vec<Matrix> = self
                    .quiver
                    .incoming(v)
                    .map(|a| rep.mats()[a].clone())
                    .collect();
                let mut span = Matrix::hstack(&images, d);
                let mut rank = span.rank();
                let mut tops = Vec::new();
                for j in 0..d {
                    let e = Matrix::from_fn(d, 1, |r, _| Q::from_integer(i64::from(r == j).into()));
                    let candidate = Matrix::hstack(&[span.clone(), e.clone()], d);
                    let r = candidate.rank();
                    if r > rank {
                        span = candidate;
                        rank = r;
                        tops.push(e);
                    }
                }
                tops
            })
            .collect()
    }

    /// Projective cover `P0 -> M` and its kernel `ΩM`.
    pub fn presentation(&self, m: &BQAModule) -> Result<Presentation> {
        let tops = self.top_vectors(m);
        let mut summands = Vec::new();
        let mut cover_vertices = Vec::new();
        for (v, ts) in tops.iter().enumerate() {
            for _ in ts {
                summands.push(self.projective(v).0);
                cover_vertices.push(v);
            }
        }
        let cover = Representation::direct_sum_all(&self.quiver, &summands)?;
        // cover map at each vertex w: the summand (v, t) sends path p to M_p t
        let n = self.quiver.n();
        let mut pi = Vec::with_capacity(n);
        for w in 0..n {
            let mut cols = Vec::new();
            for (v, ts) in tops.iter().enumerate() {
                for t in ts {
                    let paths = self
                        .basis
                        .iter()
                        .filter(|p| p.start == v && self.end(p) == w);
                    for p in paths {
                        let action = if p.arrows.is_empty() {
                            Matrix::identity(m.0.dims()[v])
                        } else {
                            self.path_action(&m.0, &p.arrows)
                        };
                        cols.push(action.mul(t));
                    }
                }
            }
            let map = Matrix::hstack(&cols, m.0.dims()[w]);
            if map.rank() != m.0.dims()[w] {
                return Err(Error::Verification(format!(
                    "projective cover is not onto at vertex {}",
                    w + 1
                )));
            }
            pi.push(map);
        }
        let inclusion: Vec<Matrix> = pi.iter().map(Matrix::kernel).collect();
        let syzygy = cover.subrepresentation(&inclusion)?;
        Ok(Presentation {
            cover: BQAModule(cover),
            cover_vertices,
            syzygy: BQAModule(syzygy),
            inclusion,
            projection: pi,
        })
    }

    /// First syzygy of `M`.
    pub fn syzygy(&self, m: &BQAModule) -> Result<BQAModule> {
        Ok(self.presentation(m)?.syzygy)
    }

    /// `Ext¹(M, N)` as the cokernel of `Hom(P0, N) -> Hom(ΩM, N)`.
    pub fn ext1(&self, m: &BQAModule, n: &BQAModule) -> Result<usize> {
        let pres = self.presentation(m)?;
        let target = hom(&pres.syzygy.0, &n.0)?;
        if target.dim == 0 {
            return Ok(0);
        }
        let restricted: Vec<Vec<Q>> = hom(&pres.cover.0, &n.0)?
            .basis
            .iter()
            .map(|f| {
                compose(f, &pres.inclusion)
                    .iter()
                    .flat_map(Matrix::flatten)
                    .collect()
            })
            .collect();
        Ok(target.dim - span_rank(&restricted))
    }
}

/// `0 -> ΩM -> P0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub cover: BQAModule,
    /// Top vertex of each indecomposable summand of the cover.
    pub cover_vertices: Vec<usize>,
    pub syzygy: BQAModule,
    pub inclusion: Vec<Matrix>,
    pub projection: Vec<Matrix>,
}

/// A module over a monomial algebra; relations are checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BQAModule(Representation);

impl BQAModule {
    pub fn rep(&self) -> &Representation {
        &self.0
    }

    pub fn into_inner(self) -> Representation {
        self.0
    }

    pub fn dims(&self) -> &[usize] {
        self.0.dims()
    }
}

pub fn hom_bqa(m: &BQAModule, n: &BQAModule) -> Result<HomSpace> {
    hom(&m.0, &n.0)
}

pub fn is_isomorphic_bqa(m: &BQAModule, n: &BQAModule) -> Result<bool> {
    is_isomorphic(&m.0, &n.0)
}

/// Arrow indices of the counterexample quiver (0-based).
pub mod arrows {
    /// `1 -> 3`, in the relations.
    pub const ALPHA: usize = 0;
    /// `3 -> 2`
    pub const BETA: usize = 1;
    /// `2 -> 1`
    pub const GAMMA: usize = 2;
    /// `1 -> 3`, the second arrow of the double arrow; no relation.
    pub const DELTA: usize = 3;
}

/// The cluster-tilted algebra of type `~A(2,1)` on the oriented triangle
/// `1 => 3 -> 2 -> 1` (double arrow `alpha, delta: 1 -> 3`) with relations
/// `alpha beta = beta gamma = gamma alpha = 0`.
pub fn build_counterexample_algebra() -> MonomialAlgebra {
    use arrows::*;
    let quiver = Quiver::new(3, vec![(0, 2), (2, 1), (1, 0), (0, 2)]).expect("triangle quiver");
    MonomialAlgebra::new(
        quiver,
        vec![vec![ALPHA, BETA], vec![BETA, GAMMA], vec![GAMMA, ALPHA]],
    )
    .expect("admissible")
}

fn thin_module(alg: &MonomialAlgebra, nonzero: &[usize]) -> Result<BQAModule> {
    let mats = (0..alg.quiver().arrows().len())
        .map(|a| Matrix::from_i64(1, 1, &[&[i64::from(nonzero.contains(&a))]]))
        .collect();
    alg.module(Representation::new(
        alg.quiver().clone(),
        vec![1, 1, 1],
        mats,
    )?)
}

/// The uniserial module with Loewy series `1 / 3 / 2`.
pub fn module_m(alg: &MonomialAlgebra) -> Result<BQAModule> {
    thin_module(alg, &[arrows::DELTA, arrows::BETA])
}

/// The uniserial module with Loewy series `2 / 1 / 3`.
pub fn module_n(alg: &MonomialAlgebra) -> Result<BQAModule> {
    thin_module(alg, &[arrows::GAMMA, arrows::DELTA])
}

/// Facts about the two rigid, non-isomorphic modules with equal dimension
/// vectors and their non-rigid lifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub algebra_dim: usize,
    pub projective_dims: Vec<Vec<usize>>,
    pub dim_m: Vec<usize>,
    pub dim_n: Vec<usize>,
    pub ext_mm: usize,
    pub ext_nn: usize,
    pub isomorphic: bool,
    pub syzygy_m: Vec<usize>,
    pub syzygy_n: Vec<usize>,
    pub hom_dims: BTreeMap<String, usize>,
    /// `Hom(M, N)` is spanned by composites `M -> I_2 -> N`.
    pub hom_mn_factors_through_i2: bool,
    /// One basis element of `Hom(M, N)`, vertexwise scalars.
    pub hom_mn_basis: Vec<Vec<String>>,
    /// `Ext¹` of the quasi-length-two tube module over the path algebra.
    pub lift_ext_path_algebra: usize,
    /// `Ext¹` in the cluster category: the path-algebra Ext plus its dual.
    pub lift_ext_cluster_category: usize,
}

pub fn counterexample_report() -> Result<CounterexampleReport> {
    let alg = build_counterexample_algebra();
    let m = module_m(&alg)?;
    let n = module_n(&alg)?;
    let fail = |what: &str| Err(Error::Verification(format!("counterexample: {what}")));

    let ext_mm = alg.ext1(&m, &m)?;
    let ext_nn = alg.ext1(&n, &n)?;
    let isomorphic = is_isomorphic_bqa(&m, &n)?;
    if m.dims() != n.dims() {
        return fail("dimension vectors differ");
    }
    if ext_mm != 0 || ext_nn != 0 {
        return fail("M or N is not rigid");
    }
    if isomorphic {
        return fail("M and N are isomorphic");
    }

    let i2 = alg.injective(1);
    let into_i2 = hom_bqa(&m, &i2)?;
    let out_of_i2 = hom_bqa(&i2, &n)?;
    let composites: Vec<Vec<Q>> = into_i2
        .basis
        .iter()
        .flat_map(|f| out_of_i2.basis.iter().map(move |g| compose(g, f)))
        .map(|h| h.iter().flat_map(Matrix::flatten).collect())
        .collect();
    let hom_mn = hom_bqa(&m, &n)?;
    let hom_mn_vectors: Vec<Vec<Q>> = hom_mn
        .basis
        .iter()
        .map(|h| h.iter().flat_map(Matrix::flatten).collect())
        .collect();
    let factor_rank = span_rank(&composites);
    let joint = span_rank(&[composites.clone(), hom_mn_vectors].concat());
    let factors = hom_mn.dim > 0 && factor_rank == hom_mn.dim && joint == factor_rank;

    let mut hom_dims = BTreeMap::new();
    hom_dims.insert("M,M".to_string(), hom_dim(m.rep(), m.rep())?);
    hom_dims.insert("N,N".to_string(), hom_dim(n.rep(), n.rep())?);
    hom_dims.insert("M,N".to_string(), hom_mn.dim);
    hom_dims.insert("N,M".to_string(), hom_dim(n.rep(), m.rep())?);

    let tube = atilde21_tube_modules()?;
    let lift_ext = ext1_dim(&tube.m, &tube.m)?;
    if lift_ext == 0 {
        return fail("tube module is rigid");
    }

    Ok(CounterexampleReport {
        algebra_dim: alg.dim(),
        projective_dims: (0..3).map(|v| alg.projective(v).dims().to_vec()).collect(),
        dim_m: m.dims().to_vec(),
        dim_n: n.dims().to_vec(),
        ext_mm,
        ext_nn,
        isomorphic,
        syzygy_m: alg.syzygy(&m)?.dims().to_vec(),
        syzygy_n: alg.syzygy(&n)?.dims().to_vec(),
        hom_dims,
        hom_mn_factors_through_i2: factors,
        hom_mn_basis: hom_mn
            .basis
            .iter()
            .map(|f| {
                f.iter()
                    .map(|x| crate::linalg::render_q(x.get(0, 0)))
                    .collect()
            })
            .collect(),
        lift_ext_path_algebra: lift_ext,
        lift_ext_cluster_category: 2 * lift_ext,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_algebra_basis() {
        let alg = build_counterexample_algebra();
        // e1, e2, e3, alpha, beta, gamma, delta, delta beta, gamma delta,
        // gamma delta beta
        assert_eq!(alg.dim(), 10);
        let dims: Vec<Vec<usize>> = (0..3).map(|v| alg.projective(v).dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![1, 1, 2], vec![1, 2, 1], vec![0, 1, 1]]);
        for v in 0..3 {
            let p = alg.projective(v);
            assert!(alg.module(p.rep().clone()).is_ok());
            assert_eq!(hom_dim(p.rep(), p.rep()).unwrap(), p.dims()[v]);
        }
    }

    #[test]
    fn relations_enforced() {
        let alg = build_counterexample_algebra();
        let bad = Representation::new(
            alg.quiver().clone(),
            vec![1, 1, 1],
            (0..4)
                .map(|a| Matrix::from_i64(1, 1, &[&[i64::from(a < 2)]]))
                .collect(),
        )
        .unwrap();
        assert!(matches!(alg.module(bad), Err(Error::RelationViolated(_))));
        let cyclic = Quiver::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert!(matches!(
            MonomialAlgebra::new(cyclic.clone(), vec![]),
            Err(Error::NotAdmissible(_))
        ));
        assert!(matches!(
            MonomialAlgebra::new(cyclic, vec![vec![0]]),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn syzygies() {
        let alg = build_counterexample_algebra();
        for v in 0..3 {
            assert!(alg.syzygy(&alg.projective(v)).unwrap().rep().is_zero());
        }
        let m = module_m(&alg).unwrap();
        let pres = alg.presentation(&m).unwrap();
        assert_eq!(pres.syzygy.dims(), &[0, 0, 1]);
        let cover: usize = pres.cover.dims().iter().sum();
        assert_eq!(cover - 3, 1);
    }

    #[test]
    fn hom_and_ext_of_the_pair() {
        let alg = build_counterexample_algebra();
        let m = module_m(&alg).unwrap();
        let n = module_n(&alg).unwrap();
        assert_eq!(hom_bqa(&m, &m).unwrap().dim, 1);
        assert_eq!(hom_bqa(&m, &n).unwrap().dim, 1);
        assert_eq!(alg.ext1(&m, &m).unwrap(), 0);
        assert_eq!(alg.ext1(&n, &n).unwrap(), 0);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(hom_bqa(&alg.simple(i), &alg.simple(j)).unwrap().dim, 0);
                }
            }
            assert_eq!(alg.ext1(&alg.projective(i), &m).unwrap(), 0);
            assert_eq!(alg.ext1(&alg.projective(i), &n).unwrap(), 0);
        }
    }

    #[test]
    fn report_facts() {
        let r = counterexample_report().unwrap();
        assert_eq!(r.dim_m, vec![1, 1, 1]);
        assert_eq!(r.dim_n, vec![1, 1, 1]);
        assert!(!r.isomorphic);
        assert!(r.hom_mn_factors_through_i2);
        assert_eq!(r.lift_ext_cluster_category, 2);
    }

    #[test]
    fn path_algebra_matches_path_counts() {
        let q = crate::quiver::NamedQuiver::Atilde21.quiver();
        let alg = MonomialAlgebra::path_algebra(&q).unwrap();
        let counts = q.path_counts().unwrap();
        for v in 0..3 {
            assert_eq!(alg.projective(v).dims(), counts[v].as_slice());
        }
    }
}
