//! Exact Laurent polynomials, seeds and coefficient-free seed mutation.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quiver::{classify_diagram, ExchangeMatrix};

/// Sparse Laurent polynomial with integer coefficients in `n` variables.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, vec![0; n], BigInt::one())
    }

    pub fn monomial(n: usize, exps: Vec<i32>, coeff: BigInt) -> Self {
        assert_eq!(exps.len(), n);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Self { n, terms }
    }

    /// The variable `x_{i+1}`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(n, e, BigInt::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<i32>, i64)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    fn shift(&self, by: &[i32]) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms.
    fn min_exponents(&self) -> Vec<i32> {
        let mut m = vec![i32::MAX; self.n];
        for e in self.terms.keys() {
            for (mi, &ei) in m.iter_mut().zip(e) {
                *mi = (*mi).min(ei);
            }
        }
        m
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Both sides are normalised to ordinary polynomials with no monomial
    /// factor; the quotient of those is then computed by lex-leading-term
    /// division and must leave no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        assert_eq!(self.n, divisor.n);
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.n));
        }
        let sa = self.min_exponents();
        let sb = divisor.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut rem = self.shift(&neg(&sa));
        let b = divisor.shift(&neg(&sb));
        let (lead_e, lead_c) = b.terms.iter().next_back().expect("nonzero");
        let mut quot = Self::zero(self.n);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let de: Vec<i32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if de.iter().any(|&x| x < 0) {
                return Err(Error::DivisionNotExact);
            }
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Err(Error::DivisionNotExact);
            }
            let term = Self::monomial(self.n, de, qc);
            rem = rem.sub(&term.mul(&b));
            quot = quot.add(&term);
        }
        let offset: Vec<i32> = sa.iter().zip(&sb).map(|(a, b)| a - b).collect();
        Ok(quot.shift(&offset))
    }

    /// `d_i = -(minimum exponent of x_i)`, so `self = P / prod x_i^{d_i}`
    /// with `P` a polynomial not divisible by any `x_i`.
    pub fn denominator_vector(&self) -> Result<DenVector> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(DenVector(
            self.min_exponents()
                .into_iter()
                .map(|x| -(x as i64))
                .collect(),
        ))
    }

    /// Canonical text: terms in descending lexicographic exponent order,
    /// e.g. `x1^-1*x2 + x1^-1`. This is also the deduplication key.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, x)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.render())
    }
}

/// Denominator vector of a Laurent polynomial in the initial cluster.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DenVector(pub Vec<i64>);

/// Exchange matrix plus cluster, each variable written in the initial cluster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    b: ExchangeMatrix,
    cluster: Vec<LaurentPoly>,
}

impl Seed {
    pub fn initial(b: ExchangeMatrix) -> Self {
        let n = b.n();
        Self {
            cluster: (0..n).map(|i| LaurentPoly::var(n, i)).collect(),
            b,
        }
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    /// Coefficient-free mutation at `k`:
    /// `x_k' = (prod x_i^[b_ik]+ + prod x_i^[-b_ik]+) / x_k`.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let n = self.n();
        let b = self.b.mutate(k)?;
        let mut plus = LaurentPoly::one(n);
        let mut minus = LaurentPoly::one(n);
        for i in 0..n {
            let bik = self.b.get(i, k);
            if bik > 0 {
                plus = plus.mul(&self.cluster[i].pow(bik as u32));
            } else if bik < 0 {
                minus = minus.mul(&self.cluster[i].pow((-bik) as u32));
            }
        }
        let new = plus.add(&minus).exact_div(&self.cluster[k])?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new;
        Ok(Seed { b, cluster })
    }

    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Seed> {
        ks.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Sorted canonical renderings of the cluster: the same cluster in any
    /// order gives the same key.
    pub fn canonical_cluster(&self) -> Vec<String> {
        let mut v: Vec<String> = self.cluster.iter().map(LaurentPoly::render).collect();
        v.sort();
        v
    }
}

/// Result of a breadth-first exploration of the exchange graph.
#[derive(Clone, Debug)]
pub struct Exploration {
    pub seeds: Vec<Seed>,
    /// Depth at which each entry of `seeds` was first reached.
    pub depths: Vec<usize>,
    pub clusters: BTreeSet<Vec<String>>,
    pub variables: BTreeMap<String, LaurentPoly>,
    /// Number of distinct variables known after finishing each depth.
    pub variables_by_depth: Vec<usize>,
    /// Set when the depth bound stopped the search with unseen clusters left.
    pub truncated: bool,
}

/// Upper bound on the number of seeds visited without a depth bound.
pub const SEED_CAP: usize = 200_000;

/// Breadth-first closure of the initial seed of `b0` under all mutations.
///
/// For acyclic non-Dynkin input a depth bound is required. Seeds are
/// deduplicated by [`Seed::canonical_cluster`].
pub fn explore_exchange_graph(
    b0: &ExchangeMatrix,
    max_depth: Option<usize>,
) -> Result<Exploration> {
    let quiver = b0.to_quiver();
    if max_depth.is_none() && quiver.is_acyclic() && quiver.n() > 0 {
        let ty = classify_diagram(&quiver)?;
        if !ty.is_dynkin() {
            return Err(Error::DepthRequired);
        }
    }
    explore_from(Seed::initial(b0.clone()), max_depth, |_, _| 0)
}

/// As [`explore_exchange_graph`], with a caller-chosen ordering of mutation
/// directions at every seed. `order(seed_index, n)` gives a rotation offset.
pub fn explore_from(
    start: Seed,
    max_depth: Option<usize>,
    order: impl Fn(usize, usize) -> usize,
) -> Result<Exploration> {
    let n = start.n();
    let mut clusters = BTreeSet::new();
    let mut variables = BTreeMap::new();
    clusters.insert(start.canonical_cluster());
    for x in start.cluster() {
        variables.insert(x.render(), x.clone());
    }
    let mut seeds = vec![start];
    let mut depths = vec![0];
    let mut queue = VecDeque::from([0usize]);
    let mut variables_by_depth = vec![variables.len()];
    let mut truncated = false;
    while let Some(idx) = queue.pop_front() {
        let depth = depths[idx];
        let rot = order(idx, n);
        for step in 0..n {
            let k = (step + rot) % n;
            let next = seeds[idx].mutate(k)?;
            let key = next.canonical_cluster();
            if clusters.contains(&key) {
                continue;
            }
            if max_depth.is_some_and(|d| depth >= d) {
                truncated = true;
                continue;
            }
            clusters.insert(key);
            for x in next.cluster() {
                variables.entry(x.render()).or_insert_with(|| x.clone());
            }
            if variables_by_depth.len() <= depth + 1 {
                variables_by_depth.push(0);
            }
            variables_by_depth[depth + 1] = variables.len();
            seeds.push(next);
            depths.push(depth + 1);
            queue.push_back(seeds.len() - 1);
            if seeds.len() > SEED_CAP {
                return Err(Error::SeedCapExceeded(SEED_CAP));
            }
        }
    }
    Ok(Exploration {
        seeds,
        depths,
        clusters,
        variables,
        variables_by_depth,
        truncated,
    })
}

/// Checks that the denominator vector is injective on `variables`; on
/// failure returns one colliding pair.
pub fn den_injectivity_check(
    variables: &[LaurentPoly],
) -> Result<Option<(LaurentPoly, LaurentPoly)>> {
    let mut seen: BTreeMap<DenVector, &LaurentPoly> = BTreeMap::new();
    for x in variables {
        let d = x.denominator_vector()?;
        if let Some(prev) = seen.insert(d, x) {
            return Ok(Some((prev.clone(), x.clone())));
        }
    }
    Ok(None)
}

/// Depth-first re-enumeration of clusters, used as an independent check on
/// the breadth-first search in tests and reports.
pub fn clusters_depth_first(b0: &ExchangeMatrix, max_depth: usize) -> Result<HashSet<Vec<String>>> {
    let mut seen = HashSet::new();
    let start = Seed::initial(b0.clone());
    seen.insert(start.canonical_cluster());
    let mut stack = vec![(start, 0usize)];
    while let Some((s, depth)) = stack.pop() {
        if depth >= max_depth {
            continue;
        }
        for k in (0..s.n()).rev() {
            let t = s.mutate(k)?;
            if seen.insert(t.canonical_cluster()) {
                stack.push((t, depth + 1));
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{NamedQuiver, Quiver};

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_quiver(&Quiver::linear(2))
    }

    #[test]
    fn arithmetic_examples() {
        let x1 = LaurentPoly::var(2, 0);
        let inv = LaurentPoly::from_terms(2, [(vec![-1, 0], 1)]);
        assert_eq!(x1.mul(&inv), LaurentPoly::one(2));

        let p = LaurentPoly::from_terms(2, [(vec![0, 0], 1), (vec![0, 1], 1)]);
        assert_eq!(p.exact_div(&p).unwrap(), LaurentPoly::one(2));

        let big = LaurentPoly::from_terms(
            2,
            [
                (vec![0, 0], 1),
                (vec![1, 0], 1),
                (vec![0, 1], 1),
                (vec![1, 1], 1),
            ],
        );
        let f = LaurentPoly::from_terms(2, [(vec![0, 0], 1), (vec![1, 0], 1)]);
        assert_eq!(big.exact_div(&f).unwrap(), p);
    }

    #[test]
    fn division_errors() {
        let p = LaurentPoly::from_terms(2, [(vec![0, 0], 1), (vec![1, 0], 1)]);
        let q = LaurentPoly::from_terms(2, [(vec![0, 0], 1), (vec![0, 1], 1)]);
        assert_eq!(p.exact_div(&q), Err(Error::DivisionNotExact));
        assert_eq!(
            p.exact_div(&LaurentPoly::zero(2)),
            Err(Error::DivisionByZero)
        );
        let two = LaurentPoly::from_terms(2, [(vec![0, 0], 2)]);
        assert_eq!(
            LaurentPoly::one(2).exact_div(&two),
            Err(Error::DivisionNotExact)
        );
    }

    #[test]
    fn division_with_monomial_parts() {
        // (x1^-2 * (1 + x2)^2) / (x2^3 * (1 + x2)) = x1^-2 x2^-3 (1 + x2)
        let one_x2 = LaurentPoly::from_terms(2, [(vec![0, 0], 1), (vec![0, 1], 1)]);
        let a = one_x2
            .pow(2)
            .mul(&LaurentPoly::from_terms(2, [(vec![-2, 0], 1)]));
        let b = one_x2.mul(&LaurentPoly::from_terms(2, [(vec![0, 3], 1)]));
        let expect = one_x2.mul(&LaurentPoly::from_terms(2, [(vec![-2, -3], 1)]));
        assert_eq!(a.exact_div(&b).unwrap(), expect);
    }

    #[test]
    fn rendering() {
        let p = LaurentPoly::from_terms(2, [(vec![-1, 1], 1), (vec![-1, 0], 1)]);
        assert_eq!(p.render(), "x1^-1*x2 + x1^-1");
        let q = LaurentPoly::from_terms(3, [(vec![0, 0, 0], -2), (vec![2, 0, -1], 3)]);
        assert_eq!(q.render(), "3*x1^2*x3^-1 - 2");
        let r = LaurentPoly::from_terms(1, [(vec![1], -1)]);
        assert_eq!(r.render(), "-x1");
        assert_eq!(LaurentPoly::zero(2).render(), "0");
    }

    #[test]
    fn a2_pentagon() {
        let s = Seed::initial(a2());
        let s1 = s.mutate(0).unwrap();
        assert_eq!(s1.cluster()[0].render(), "x1^-1*x2 + x1^-1");
        let s5 = s.mutate_sequence(&[0, 1, 0, 1, 0]).unwrap();
        assert_eq!(s5.cluster()[0], LaurentPoly::var(2, 1));
        assert_eq!(s5.cluster()[1], LaurentPoly::var(2, 0));
        assert_eq!(s1.mutate(0).unwrap(), s);
    }

    #[test]
    fn denominators() {
        assert_eq!(
            LaurentPoly::var(2, 0).denominator_vector().unwrap(),
            DenVector(vec![-1, 0])
        );
        let x = LaurentPoly::from_terms(2, [(vec![-1, -1], 1), (vec![0, -1], 1), (vec![-1, 0], 1)]);
        assert_eq!(x.denominator_vector().unwrap(), DenVector(vec![1, 1]));
        let y = LaurentPoly::from_terms(2, [(vec![-1, 0], 1), (vec![-1, 1], 1)]);
        assert_eq!(y.denominator_vector().unwrap(), DenVector(vec![1, 0]));
        assert_eq!(
            LaurentPoly::zero(2).denominator_vector(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn exploration_counts() {
        let e = explore_exchange_graph(&a2(), None).unwrap();
        assert_eq!((e.clusters.len(), e.variables.len()), (5, 5));
        assert!(!e.truncated);
        let a3 = ExchangeMatrix::from_quiver(&Quiver::linear(3));
        let e3 = explore_exchange_graph(&a3, None).unwrap();
        assert_eq!((e3.clusters.len(), e3.variables.len()), (14, 9));
        let dfs = clusters_depth_first(&a3, 20).unwrap();
        assert_eq!(dfs.len(), 14);
        assert!(dfs.iter().all(|c| e3.clusters.contains(c)));
    }

    #[test]
    fn affine_needs_depth_and_truncates() {
        let b = ExchangeMatrix::from_quiver(&NamedQuiver::Atilde21.quiver());
        assert!(matches!(
            explore_exchange_graph(&b, None),
            Err(Error::DepthRequired)
        ));
        let e = explore_exchange_graph(&b, Some(6)).unwrap();
        assert!(e.truncated);
        assert!(e.variables_by_depth.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn injectivity_collision() {
        let x = LaurentPoly::var(2, 0);
        let hit = den_injectivity_check(&[x.clone(), x.clone()]).unwrap();
        assert_eq!(hit, Some((x.clone(), x)));
        let e = explore_exchange_graph(&a2(), None).unwrap();
        let vars: Vec<_> = e.variables.values().cloned().collect();
        assert_eq!(den_injectivity_check(&vars).unwrap(), None);
    }
}
