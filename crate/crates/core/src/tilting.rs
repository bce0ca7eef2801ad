//! Tilting modules over Dynkin path algebras and the descent towards `DA`
//! through successive complement exchanges.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};
use crate::quiver::{classify_diagram, EulerData, Preinjectivity, Quiver};
use crate::rep::{
    dynkin_indecomposables, ext1_dim_with, hom, hom_dim, is_injective, Representation,
};

/// The indecomposables of a Dynkin path algebra with their Hom and Ext
/// tables. In Dynkin type a dimension vector determines the indecomposable.
#[derive(Clone, Debug)]
pub struct Catalog {
    quiver: Quiver,
    euler: EulerData,
    modules: Vec<Representation>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
}

impl Catalog {
    pub fn new(quiver: &Quiver) -> Result<Self> {
        let ty = classify_diagram(quiver)?;
        if !ty.is_dynkin() {
            return Err(Error::NotDynkin(ty.to_string()));
        }
        let euler = EulerData::new(quiver)?;
        let modules = dynkin_indecomposables(quiver)?;
        let hom = modules
            .iter()
            .map(|x| {
                modules
                    .iter()
                    .map(|y| hom_dim(x, y))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let ext = modules
            .iter()
            .map(|x| {
                modules
                    .iter()
                    .map(|y| ext1_dim_with(&euler, x, y))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            quiver: quiver.clone(),
            euler,
            modules,
            hom,
            ext,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn module(&self, i: usize) -> &Representation {
        &self.modules[i]
    }

    pub fn dims(&self, i: usize) -> Vec<i64> {
        self.modules[i].dim_vector()
    }

    pub fn index_of(&self, d: &[i64]) -> Option<usize> {
        self.modules.iter().position(|m| m.dim_vector() == d)
    }

    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    pub fn ext(&self, i: usize, j: usize) -> usize {
        self.ext[i][j]
    }

    pub fn is_injective(&self, i: usize) -> bool {
        is_injective(&self.modules[i])
    }

    /// Index of an indecomposable representation; errors if decomposable.
    pub fn classify(&self, m: &Representation) -> Result<usize> {
        if hom_dim(m, m)? != 1 {
            return Err(Error::Decomposable(m.dims().to_vec()));
        }
        self.index_of(&m.dim_vector())
            .ok_or_else(|| Error::Decomposable(m.dims().to_vec()))
    }

    /// Multiplicities of the indecomposables in `m`, from
    /// `dim Hom(X, m) = Σ_Y mult(Y) dim Hom(X, Y)`.
    pub fn decompose(&self, m: &Representation) -> Result<Vec<usize>> {
        let size = self.len();
        let h = Matrix::from_fn(size, size, |x, y| Q::from_integer(self.hom[x][y].into()));
        let rhs = self
            .modules
            .iter()
            .map(|x| hom_dim(x, m).map(|d| Q::from_integer(d.into())))
            .collect::<Result<Vec<_>>>()?;
        let b = Matrix::from_rows(size, 1, rhs);
        let sol = h
            .solve(&b)
            .ok_or_else(|| Error::Verification("Hom table is singular".into()))?;
        (0..size)
            .map(|i| {
                let v = sol.get(i, 0);
                if v.is_integer() && *v >= Q::from_integer(0.into()) {
                    Ok(usize::try_from(v.to_integer()).expect("nonnegative"))
                } else {
                    Err(Error::Verification(format!(
                        "non-integral multiplicity {v} in decomposition"
                    )))
                }
            })
            .collect()
    }
}

/// Basic tilting module, summands given as catalog indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TiltingModule {
    pub summands: Vec<usize>,
}

impl TiltingModule {
    pub fn projectives(cat: &Catalog) -> Self {
        let n = cat.quiver.n();
        let summands = (0..n)
            .map(|i| {
                let p = Representation::projective(&cat.quiver, i).expect("path algebra");
                cat.index_of(&p.dim_vector())
                    .expect("projectives are indecomposable")
            })
            .collect();
        Self { summands }
    }

    pub fn injectives(cat: &Catalog) -> Self {
        let n = cat.quiver.n();
        let summands = (0..n)
            .map(|i| {
                let p = Representation::injective(&cat.quiver, i).expect("path algebra");
                cat.index_of(&p.dim_vector())
                    .expect("injectives are indecomposable")
            })
            .collect();
        Self { summands }
    }

    pub fn key(&self) -> BTreeSet<usize> {
        self.summands.iter().copied().collect()
    }

    pub fn dims(&self, cat: &Catalog) -> Vec<Vec<i64>> {
        self.summands.iter().map(|&i| cat.dims(i)).collect()
    }
}

/// Whether the indecomposable summands form a tilting module: `n` pairwise
/// non-isomorphic summands with all Ext¹ vanishing.
pub fn is_tilting_module(cat: &Catalog, summands: &[Representation]) -> Result<bool> {
    let idx = summands
        .iter()
        .map(|m| cat.classify(m))
        .collect::<Result<Vec<_>>>()?;
    Ok(is_tilting_indices(cat, &idx))
}

fn is_tilting_indices(cat: &Catalog, idx: &[usize]) -> bool {
    let distinct: BTreeSet<usize> = idx.iter().copied().collect();
    distinct.len() == idx.len()
        && idx.len() == cat.quiver.n()
        && idx.iter().all(|&a| idx.iter().all(|&b| cat.ext(a, b) == 0))
}

/// Indecomposables `M` with `Ext¹(T, M) = 0`, keyed by catalog index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionClass {
    pub members: BTreeSet<usize>,
}

impl TorsionClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }
}

pub fn torsion_class(cat: &Catalog, t: &TiltingModule) -> TorsionClass {
    TorsionClass {
        members: (0..cat.len())
            .filter(|&m| t.summands.iter().all(|&s| cat.ext(s, m) == 0))
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Descent {
    Done,
    Summand(usize),
}

/// A non-injective summand `T_0` with `dim Hom(T, T_0) = 1`, i.e. receiving
/// no maps from the other summands, or `Done` when `T = DA`.
pub fn find_descent_summand(cat: &Catalog, t: &TiltingModule) -> Result<Descent> {
    if t.summands.iter().all(|&s| cat.is_injective(s)) {
        return Ok(Descent::Done);
    }
    t.summands
        .iter()
        .enumerate()
        .find(|&(_, &s)| {
            !cat.is_injective(s) && t.summands.iter().map(|&o| cat.hom(o, s)).sum::<usize>() == 1
        })
        .map(|(k, _)| Descent::Summand(k))
        .ok_or(Error::NoDescentSummand)
}

/// One exchange `0 -> T_0 -> E -> T_0' -> 0` with `E` in `add T̄`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentStep {
    pub replaced: usize,
    pub t0: Vec<i64>,
    pub e: Vec<i64>,
    pub t0_prime: Vec<i64>,
    pub torsion_before: usize,
    pub torsion_after: usize,
}

/// Replaces `T_k` by the cokernel of its minimal left `add T̄`-approximation.
pub fn complement_and_sequence(
    cat: &Catalog,
    t: &TiltingModule,
    k: usize,
) -> Result<(TiltingModule, DescentStep)> {
    let n = cat.quiver.n();
    if k >= t.summands.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            n: t.summands.len(),
        });
    }
    let t0 = cat.module(t.summands[k]);
    let others: Vec<usize> = t
        .summands
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, &s)| s)
        .collect();

    // T_0 -> E_full, one component per hom-basis element
    let mut parts: Vec<&Representation> = Vec::new();
    let mut components: Vec<Vec<Matrix>> = Vec::new();
    let mut full_mult = vec![0usize; cat.len()];
    for &o in &others {
        let space = hom(t0, cat.module(o))?;
        for f in space.basis {
            parts.push(cat.module(o));
            components.push(f);
            full_mult[o] += 1;
        }
    }
    let e_full = Representation::direct_sum_all(&cat.quiver, parts.iter().copied())?;
    let map: Vec<Matrix> = (0..n)
        .map(|v| {
            let blocks: Vec<Matrix> = components.iter().map(|f| f[v].clone()).collect();
            Matrix::vstack(&blocks, t0.dims()[v])
        })
        .collect();
    for (v, m) in map.iter().enumerate() {
        if m.rank() != t0.dims()[v] {
            return Err(Error::Verification(format!(
                "approximation of {:?} is not injective at vertex {}",
                t0.dims(),
                v + 1
            )));
        }
    }
    let coker = cokernel(&e_full, &map)?;
    let mult = cat.decompose(&coker)?;

    let mut t0_prime = None;
    let mut stripped = vec![0usize; cat.len()];
    for (i, &m) in mult.iter().enumerate() {
        if m == 0 {
            continue;
        }
        if others.contains(&i) {
            stripped[i] = m;
        } else if m == 1 && t0_prime.is_none() {
            t0_prime = Some(i);
        } else {
            return Err(Error::Verification(format!(
                "cokernel {:?} has multiplicities {:?}",
                coker.dims(),
                mult
            )));
        }
    }
    let t0p = t0_prime
        .ok_or_else(|| Error::Verification("cokernel lies in add of the other summands".into()))?;
    if t0p == t.summands[k] {
        return Err(Error::Verification(
            "complement equals the replaced summand".into(),
        ));
    }

    let mut e_min = vec![0i64; n];
    for (i, (&f, &s)) in full_mult.iter().zip(&stripped).enumerate() {
        if s > f {
            return Err(Error::Verification(
                "stripped more than the approximation holds".into(),
            ));
        }
        for (a, b) in e_min.iter_mut().zip(cat.dims(i)) {
            *a += (f - s) as i64 * b;
        }
    }
    let d0 = cat.dims(t.summands[k]);
    let d0p = cat.dims(t0p);
    let sum: Vec<i64> = d0.iter().zip(&d0p).map(|(a, b)| a + b).collect();
    if e_min != sum {
        return Err(Error::Verification(format!(
            "dim E = {e_min:?} but dim T0 + dim T0' = {sum:?}"
        )));
    }

    let mut next = t.clone();
    next.summands[k] = t0p;
    if !is_tilting_indices(cat, &next.summands) {
        return Err(Error::Verification(format!(
            "{:?} is not tilting",
            next.dims(cat)
        )));
    }
    let before = torsion_class(cat, t);
    let after = torsion_class(cat, &next);
    Ok((
        next,
        DescentStep {
            replaced: k,
            t0: d0,
            e: e_min,
            t0_prime: d0p,
            torsion_before: before.len(),
            torsion_after: after.len(),
        },
    ))
}

/// Cokernel of an injective map into `e`, given per vertex.
fn cokernel(e: &Representation, map: &[Matrix]) -> Result<Representation> {
    let quiver = e.quiver();
    let proj: Vec<Matrix> = map
        .iter()
        .zip(e.dims())
        .map(|(m, &d)| {
            if m.cols() == 0 {
                Matrix::identity(d)
            } else {
                m.cokernel_map()
            }
        })
        .collect();
    let sections: Vec<Matrix> = proj
        .iter()
        .map(|p| {
            p.solve(&Matrix::identity(p.rows()))
                .ok_or_else(|| Error::Verification("quotient map is not surjective".into()))
        })
        .collect::<Result<_>>()?;
    let mats = quiver
        .arrows()
        .iter()
        .zip(e.mats())
        .map(|(&(s, t), a)| proj[t].mul(a).mul(&sections[s]))
        .collect();
    Representation::new(
        quiver.clone(),
        proj.iter().map(Matrix::rows).collect(),
        mats,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentChain {
    pub start: Vec<Vec<i64>>,
    pub steps: Vec<DescentStep>,
    pub terminal: Vec<Vec<i64>>,
}

/// Exchanges descent summands until reaching `DA`, checking every step:
/// the torsion class shrinks strictly, exactly one summand changes, `T_0`
/// leaves the new torsion class and `Ext¹(T_0, M) = 0` on it, and `T_0'`
/// is preinjective.
pub fn prop8_descent(cat: &Catalog, t: &TiltingModule) -> Result<DescentChain> {
    if !is_tilting_indices(cat, &t.summands) {
        return Err(Error::Verification(format!(
            "{:?} is not tilting",
            t.dims(cat)
        )));
    }
    let mut cur = t.clone();
    let mut steps = Vec::new();
    loop {
        let k = match find_descent_summand(cat, &cur)? {
            Descent::Done => break,
            Descent::Summand(k) => k,
        };
        if steps.len() >= cat.len() {
            return Err(Error::Verification(format!(
                "descent from {:?} did not terminate in {} steps",
                t.dims(cat),
                cat.len()
            )));
        }
        let (next, step) = complement_and_sequence(cat, &cur, k)?;
        let before = torsion_class(cat, &cur);
        let after = torsion_class(cat, &next);
        let witness = || format!("step {} from {:?}", steps.len() + 1, cur.dims(cat));
        if !(after.members.is_subset(&before.members) && after.len() < before.len()) {
            return Err(Error::Verification(format!(
                "torsion class does not shrink at {}",
                witness()
            )));
        }
        let changed = cur
            .summands
            .iter()
            .zip(&next.summands)
            .filter(|(a, b)| a != b)
            .count();
        if changed != 1 {
            return Err(Error::Verification(format!(
                "{changed} summands changed at {}",
                witness()
            )));
        }
        let t0 = cur.summands[k];
        if after.contains(t0) || after.members.iter().any(|&m| cat.ext(t0, m) != 0) {
            return Err(Error::Verification(format!(
                "T0 meets the new torsion class at {}",
                witness()
            )));
        }
        if cat.euler.is_preinjective(&step.t0_prime, 4 * cat.len())? != Preinjectivity::Preinjective
        {
            return Err(Error::Verification(format!(
                "T0' not preinjective at {}",
                witness()
            )));
        }
        steps.push(step);
        cur = next;
    }
    let da = TiltingModule::injectives(cat);
    if cur.key() != da.key() {
        return Err(Error::Verification(format!(
            "descent ended at {:?}",
            cur.dims(cat)
        )));
    }
    Ok(DescentChain {
        start: t.dims(cat),
        steps,
        terminal: cur.dims(cat),
    })
}

/// All basic tilting modules, summands in increasing catalog order.
pub fn enumerate_tilting_modules(cat: &Catalog) -> Vec<TiltingModule> {
    let n = cat.quiver.n();
    let rigid: Vec<usize> = (0..cat.len()).filter(|&i| cat.ext(i, i) == 0).collect();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn extend(
        cat: &Catalog,
        rigid: &[usize],
        n: usize,
        from: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<TiltingModule>,
    ) {
        if stack.len() == n {
            out.push(TiltingModule {
                summands: stack.clone(),
            });
            return;
        }
        for (pos, &c) in rigid.iter().enumerate().skip(from) {
            if stack
                .iter()
                .all(|&s| cat.ext(s, c) == 0 && cat.ext(c, s) == 0)
            {
                stack.push(c);
                extend(cat, rigid, n, pos + 1, stack, out);
                stack.pop();
            }
        }
    }
    extend(cat, &rigid, n, 0, &mut stack, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::NamedQuiver;

    fn a3() -> Catalog {
        Catalog::new(&Quiver::linear(3)).unwrap()
    }

    #[test]
    fn projectives_and_injectives_are_tilting() {
        let cat = a3();
        for t in [
            TiltingModule::projectives(&cat),
            TiltingModule::injectives(&cat),
        ] {
            let reps: Vec<Representation> =
                t.summands.iter().map(|&i| cat.module(i).clone()).collect();
            assert!(is_tilting_module(&cat, &reps).unwrap());
        }
        assert_eq!(
            torsion_class(&cat, &TiltingModule::projectives(&cat)).len(),
            6
        );
        let da = TiltingModule::injectives(&cat);
        assert_eq!(torsion_class(&cat, &da).members, da.key());
    }

    #[test]
    fn five_tilting_modules_in_linear_a3() {
        assert_eq!(enumerate_tilting_modules(&a3()).len(), 5);
    }

    #[test]
    fn decomposable_candidate_rejected() {
        let cat = a3();
        let q = Quiver::linear(3);
        let s = Representation::simple(&q, 0)
            .direct_sum(&Representation::simple(&q, 2))
            .unwrap();
        assert!(matches!(
            is_tilting_module(&cat, &[s]),
            Err(Error::Decomposable(_))
        ));
    }

    #[test]
    fn descent_from_projectives() {
        let cat = a3();
        let t = TiltingModule::projectives(&cat);
        let Descent::Summand(k) = find_descent_summand(&cat, &t).unwrap() else {
            panic!("A is not DA");
        };
        assert!(!cat.is_injective(t.summands[k]));
        let (next, step) = complement_and_sequence(&cat, &t, k).unwrap();
        assert!(torsion_class(&cat, &next).len() < torsion_class(&cat, &t).len());
        let sum: Vec<i64> = step
            .t0
            .iter()
            .zip(&step.t0_prime)
            .map(|(a, b)| a + b)
            .collect();
        assert_eq!(step.e, sum);
        let chain = prop8_descent(&cat, &t).unwrap();
        assert!(!chain.steps.is_empty());
        assert_eq!(
            find_descent_summand(&cat, &TiltingModule::injectives(&cat)).unwrap(),
            Descent::Done
        );
        assert!(prop8_descent(&cat, &TiltingModule::injectives(&cat))
            .unwrap()
            .steps
            .is_empty());
    }

    #[test]
    fn every_chain_reaches_da() {
        for q in [Quiver::linear(3), NamedQuiver::D4.quiver()] {
            let cat = Catalog::new(&q).unwrap();
            let all = enumerate_tilting_modules(&cat);
            assert!(!all.is_empty());
            for t in &all {
                let chain = prop8_descent(&cat, t).unwrap();
                for w in chain.steps.windows(2) {
                    assert_eq!(w[0].torsion_after, w[1].torsion_before);
                }
            }
        }
    }
}
