//! Quivers, exchange matrices, the Euler form and Dynkin root systems.
//!
//! Vertices are 0-based in this API. Everything user-facing (JSON files, the
//! CLI, variable names such as `x1`) is 1-based.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, Matrix};

/// A finite quiver without loops. Parallel arrows are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        for &(s, t) in &arrows {
            for v in [s, t] {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
            }
            if s == t {
                return Err(Error::Loop(s));
            }
        }
        Ok(Self { n, arrows })
    }

    /// Oriented path `0 -> 1 -> ... -> n-1`.
    pub fn linear(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("valid path quiver")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Number of arrows `i -> j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|&&a| a == (i, j)).count()
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, &(_, t))| t == v)
            .map(|(a, _)| a)
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, &(s, _))| s == v)
            .map(|(a, _)| a)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.outgoing(v).next().is_none()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.incoming(v).next().is_none()
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            n: self.n,
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    /// Reverses every arrow incident to `k`, keeping arrow indices.
    pub fn reflect(&self, k: usize) -> Quiver {
        Quiver {
            n: self.n,
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| if s == k || t == k { (t, s) } else { (s, t) })
                .collect(),
        }
    }

    /// Vertices in an order where every arrow goes forward, or `None` if the
    /// quiver has an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in self.outgoing(v) {
                let t = self.arrows[a].1;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.neighbours();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn neighbours(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.n];
        for &(s, t) in &self.arrows {
            adj[s].insert(t);
            adj[t].insert(s);
        }
        adj
    }

    /// Number of edges between `i` and `j` in the underlying graph.
    fn edge_count(&self, i: usize, j: usize) -> usize {
        self.arrow_count(i, j) + self.arrow_count(j, i)
    }

    /// Paths from every vertex, counted; `None` for quivers with cycles.
    /// Entry `[i][j]` is the number of paths `i ~> j` (including the trivial
    /// path when `i == j`).
    pub fn path_counts(&self) -> Option<Vec<Vec<usize>>> {
        let order = self.topological_order()?;
        let mut counts = vec![vec![0usize; self.n]; self.n];
        for i in 0..self.n {
            counts[i][i] = 1;
        }
        // process targets in reverse topological order so successors are done
        for &v in order.iter().rev() {
            for a in self.outgoing(v).collect::<Vec<_>>() {
                let t = self.arrows[a].1;
                for w in 0..self.n {
                    counts[v][w] += counts[t][w];
                }
            }
        }
        Some(counts)
    }
}

/// Skew-symmetric integer matrix; `b[i][j] > 0` means `b[i][j]` arrows `i -> j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExchangeMatrix(Vec<Vec<i64>>);

impl ExchangeMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if rows[i][j] != -rows[j][i] {
                    return Err(Error::NotSkewSymmetric);
                }
            }
        }
        Ok(Self(rows))
    }

    pub fn from_quiver(q: &Quiver) -> Self {
        let n = q.n();
        let mut b = vec![vec![0i64; n]; n];
        for &(s, t) in q.arrows() {
            b[s][t] += 1;
            b[t][s] -= 1;
        }
        Self(b)
    }

    /// The quiver with `b[i][j]` arrows `i -> j` for each positive entry.
    pub fn to_quiver(&self) -> Quiver {
        let n = self.n();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for _ in 0..self.0[i][j].max(0) {
                    arrows.push((i, j));
                }
            }
        }
        Quiver::new(n, arrows).expect("skew-symmetric matrix has zero diagonal")
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.0[i][j] == -self.0[j][i]))
    }

    /// Matrix mutation at `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.n();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        let b = &self.0;
        let pos = |x: i64| x.max(0);
        let out = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == k || j == k {
                            -b[i][j]
                        } else {
                            b[i][j] + pos(b[i][k]) * pos(b[k][j]) - pos(-b[i][k]) * pos(-b[k][j])
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self(out))
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            write!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

/// Euler form and Coxeter matrix of an acyclic quiver.
///
/// `<d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j`, stored as the matrix
/// `E` with `<d, e> = d^T E e`. The Coxeter matrix `Phi = -E^{-1} E^T` sends
/// the dimension vector of a non-projective indecomposable to that of its
/// AR-translate, and satisfies `<d, e> = -<e, Phi d>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerData {
    euler: Vec<Vec<i64>>,
    coxeter: Vec<Vec<i64>>,
    coxeter_inv: Vec<Vec<i64>>,
}

impl EulerData {
    pub fn new(quiver: &Quiver) -> Result<Self> {
        if !quiver.is_acyclic() {
            return Err(Error::NotAcyclic);
        }
        let n = quiver.n();
        let mut euler = vec![vec![0i64; n]; n];
        for (i, row) in euler.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t) in quiver.arrows() {
            euler[s][t] -= 1;
        }
        let e = Matrix::from_fn(n, n, |r, c| q(euler[r][c]));
        let e_inv = e.inverse().ok_or(Error::NotAcyclic)?;
        let phi = e_inv.mul(&e.transpose()).scale(&q(-1));
        let phi_inv = e_inv.transpose().mul(&e).scale(&q(-1));
        let to_int = |m: &Matrix| -> Result<Vec<Vec<i64>>> {
            if !m.is_integral() {
                return Err(Error::Verification(
                    "Coxeter matrix is not integral".to_string(),
                ));
            }
            Ok((0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| i64::try_from(m.get(r, c).to_integer()).expect("small entry"))
                        .collect()
                })
                .collect())
        };
        Ok(Self {
            euler,
            coxeter: to_int(&phi)?,
            coxeter_inv: to_int(&phi_inv)?,
        })
    }

    pub fn n(&self) -> usize {
        self.euler.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.euler
    }

    pub fn coxeter_matrix(&self) -> &[Vec<i64>] {
        &self.coxeter
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn form(&self, d: &[i64], e: &[i64]) -> Result<i64> {
        self.check_len(d)?;
        self.check_len(e)?;
        let n = self.n();
        Ok((0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| d[i] * self.euler[i][j] * e[j])
            .sum())
    }

    /// Symmetrised form `(d, e) = <d, e> + <e, d>`.
    pub fn symmetric_form(&self, d: &[i64], e: &[i64]) -> Result<i64> {
        Ok(self.form(d, e)? + self.form(e, d)?)
    }

    pub fn coxeter(&self, d: &[i64]) -> Result<Vec<i64>> {
        self.check_len(d)?;
        Ok(apply(&self.coxeter, d))
    }

    pub fn coxeter_inverse(&self, d: &[i64]) -> Result<Vec<i64>> {
        self.check_len(d)?;
        Ok(apply(&self.coxeter_inv, d))
    }

    /// Whether iterating the inverse Coxeter transform pushes `d` out of the
    /// nonnegative orthant within `cap` steps, i.e. whether the module with
    /// dimension vector `d` reaches an injective under `tau^-`.
    ///
    /// A vector that returns to itself first is regular and yields
    /// `Ok(false)`; running out of steps yields [`Preinjectivity::Indeterminate`].
    pub fn is_preinjective(&self, d: &[i64], cap: usize) -> Result<Preinjectivity> {
        self.check_len(d)?;
        if d.iter().any(|&x| x < 0) || d.iter().all(|&x| x == 0) {
            return Err(Error::NotARoot(d.to_vec()));
        }
        let mut v = d.to_vec();
        for _ in 0..cap {
            v = apply(&self.coxeter_inv, &v);
            if v.iter().any(|&x| x < 0) {
                return Ok(Preinjectivity::Preinjective);
            }
            if v == d {
                return Ok(Preinjectivity::NotPreinjective);
            }
        }
        Ok(Preinjectivity::Indeterminate)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preinjectivity {
    Preinjective,
    NotPreinjective,
    Indeterminate,
}

fn apply(m: &[Vec<i64>], d: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(d).map(|(a, b)| a * b).sum())
        .collect()
}

/// Affine (extended Dynkin) diagram types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AffineType {
    /// Cycle with `p` arrows one way and `q` the other, `p >= q`.
    A {
        p: usize,
        q: usize,
    },
    D(usize),
    E(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagramType {
    Dynkin { family: char, rank: usize },
    Affine(AffineType),
    Other,
}

impl DiagramType {
    pub fn is_dynkin(&self) -> bool {
        matches!(self, DiagramType::Dynkin { .. })
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramType::Dynkin { family, rank } => write!(f, "{family}{rank}"),
            DiagramType::Affine(AffineType::A { p, q }) => write!(f, "~A({p},{q})"),
            DiagramType::Affine(AffineType::D(n)) => write!(f, "~D{n}"),
            DiagramType::Affine(AffineType::E(n)) => write!(f, "~E{n}"),
            DiagramType::Other => write!(f, "other"),
        }
    }
}

/// Classifies the underlying graph of a connected quiver.
pub fn classify_diagram(q: &Quiver) -> Result<DiagramType> {
    let n = q.n();
    if n == 0 || !q.is_connected() {
        return Err(Error::Disconnected);
    }
    let adj = q.neighbours();
    let simple = (0..n).all(|i| (i + 1..n).all(|j| q.edge_count(i, j) <= 1));
    let edges = q.arrows().len();

    if n == 2 && edges == 2 && q.edge_count(0, 1) == 2 {
        let forward = q.arrow_count(0, 1);
        let backward = q.arrow_count(1, 0);
        if forward == 2 || backward == 2 {
            return Ok(DiagramType::Affine(AffineType::A { p: 1, q: 1 }));
        }
        // two arrows in opposite directions form an oriented 2-cycle
        return Ok(DiagramType::Other);
    }
    if !simple {
        return Ok(DiagramType::Other);
    }
    if edges == n && n >= 3 && adj.iter().all(|a| a.len() == 2) {
        let (p, qq) = cycle_orientation(q, &adj);
        return Ok(DiagramType::Affine(AffineType::A {
            p: p.max(qq),
            q: p.min(qq),
        }));
    }
    if edges != n - 1 {
        return Ok(DiagramType::Other);
    }
    // tree
    let degrees: Vec<usize> = adj.iter().map(BTreeSet::len).collect();
    let branch: Vec<usize> = (0..n).filter(|&v| degrees[v] >= 3).collect();
    if branch.is_empty() {
        return Ok(DiagramType::Dynkin {
            family: 'A',
            rank: n,
        });
    }
    let arm = |from: usize, first: usize| -> usize {
        let (mut prev, mut cur, mut len) = (from, first, 1);
        while degrees[cur] == 2 {
            let next = *adj[cur].iter().find(|&&w| w != prev).expect("degree two");
            prev = cur;
            cur = next;
            len += 1;
        }
        if degrees[cur] == 1 {
            len
        } else {
            usize::MAX
        }
    };
    match branch.as_slice() {
        [c] if degrees[*c] == 3 => {
            let mut arms: Vec<usize> = adj[*c].iter().map(|&w| arm(*c, w)).collect();
            arms.sort_unstable();
            Ok(match arms.as_slice() {
                [1, 1, _] => DiagramType::Dynkin {
                    family: 'D',
                    rank: n,
                },
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => DiagramType::Dynkin {
                    family: 'E',
                    rank: n,
                },
                [2, 2, 2] | [1, 3, 3] | [1, 2, 5] => DiagramType::Affine(AffineType::E(n - 1)),
                _ => DiagramType::Other,
            })
        }
        [c] if degrees[*c] == 4 && adj[*c].iter().all(|&w| degrees[w] == 1) => {
            Ok(DiagramType::Affine(AffineType::D(4)))
        }
        [a, b] if degrees[*a] == 3 && degrees[*b] == 3 => {
            let leaves = |c: usize| adj[c].iter().filter(|&&w| degrees[w] == 1).count();
            if leaves(*a) == 2 && leaves(*b) == 2 {
                Ok(DiagramType::Affine(AffineType::D(n - 1)))
            } else {
                Ok(DiagramType::Other)
            }
        }
        _ => Ok(DiagramType::Other),
    }
}

fn cycle_orientation(q: &Quiver, adj: &[BTreeSet<usize>]) -> (usize, usize) {
    let (mut forward, mut backward) = (0, 0);
    let start = 0;
    let mut prev = start;
    let mut cur = *adj[start]
        .iter()
        .next()
        .expect("cycle vertex has neighbours");
    let step = |u: usize, v: usize, f: &mut usize, b: &mut usize| {
        if q.arrow_count(u, v) == 1 {
            *f += 1;
        } else {
            *b += 1;
        }
    };
    step(prev, cur, &mut forward, &mut backward);
    while cur != start {
        let next = *adj[cur].iter().find(|&&w| w != prev).expect("cycle");
        step(cur, next, &mut forward, &mut backward);
        prev = cur;
        cur = next;
    }
    (forward, backward)
}

/// Positive roots of a Dynkin quiver's diagram, by closing the simple roots
/// under simple reflections while staying in the positive orthant.
pub fn positive_roots(q: &Quiver) -> Result<Vec<Vec<i64>>> {
    let ty = classify_diagram(q)?;
    if !ty.is_dynkin() {
        return Err(Error::NotDynkin(ty.to_string()));
    }
    let n = q.n();
    // symmetric Cartan form: 2 on the diagonal, minus the edge count off it
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        2
                    } else {
                        -(q.edge_count(i, j) as i64)
                    }
                })
                .collect()
        })
        .collect();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * r[j]).sum();
            let mut s = r.clone();
            s[i] -= pairing;
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    Ok(roots)
}

/// On-disk quiver description with 1-based vertices and arrow indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: usize,
    pub arrows: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<usize>>,
}

impl QuiverFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn quiver(&self) -> Result<Quiver> {
        let n = self.vertices;
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for &[s, t] in &self.arrows {
            for v in [s, t] {
                if v == 0 || v > n {
                    return Err(Error::Parse(format!("arrow endpoint {v} outside 1..={n}")));
                }
            }
            arrows.push((s - 1, t - 1));
        }
        Quiver::new(n, arrows)
    }

    /// Relations as 0-based arrow sequences.
    pub fn relations(&self) -> Result<Vec<Vec<usize>>> {
        let m = self.arrows.len();
        self.relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|&a| {
                        if a == 0 || a > m {
                            Err(Error::Parse(format!("arrow index {a} outside 1..={m}")))
                        } else {
                            Ok(a - 1)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn from_quiver(q: &Quiver, relations: &[Vec<usize>]) -> Self {
        Self {
            vertices: q.n(),
            arrows: q.arrows().iter().map(|&(s, t)| [s + 1, t + 1]).collect(),
            relations: relations
                .iter()
                .map(|r| r.iter().map(|a| a + 1).collect())
                .collect(),
        }
    }
}

/// Built-in quivers with fixed orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedQuiver {
    /// `1 -> 2`
    A2,
    /// `1 -> 2 -> 3`
    A3,
    /// `1 -> 2 -> 3 -> 4`
    A4,
    /// `1 -> 2 <- 3`, `4 -> 2`: three arms into the centre 2.
    D4,
    /// `1 -> 2 -> 3` and `1 -> 3`.
    Atilde21,
}

impl NamedQuiver {
    pub const ALL: [NamedQuiver; 5] = [
        NamedQuiver::A2,
        NamedQuiver::A3,
        NamedQuiver::A4,
        NamedQuiver::D4,
        NamedQuiver::Atilde21,
    ];

    pub fn quiver(self) -> Quiver {
        let arrows = match self {
            NamedQuiver::A2 => vec![(0, 1)],
            NamedQuiver::A3 => vec![(0, 1), (1, 2)],
            NamedQuiver::A4 => vec![(0, 1), (1, 2), (2, 3)],
            NamedQuiver::D4 => vec![(0, 1), (2, 1), (3, 1)],
            NamedQuiver::Atilde21 => vec![(0, 1), (1, 2), (0, 2)],
        };
        let n = match self {
            NamedQuiver::A2 => 2,
            NamedQuiver::A4 | NamedQuiver::D4 => 4,
            _ => 3,
        };
        Quiver::new(n, arrows).expect("built-in quiver")
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedQuiver::A2 => "A2",
            NamedQuiver::A3 => "A3",
            NamedQuiver::A4 => "A4",
            NamedQuiver::D4 => "D4",
            NamedQuiver::Atilde21 => "Atilde21",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|q| q.name().eq_ignore_ascii_case(s))
    }
}
