//! The integral reflection representation of a crystallographic Coxeter
//! group on the span of its simple roots.
//!
//! Simple reflection `i` acts by `α_j ↦ α_j − a_ij α_i`, so group elements
//! are integer matrices acting on root-basis coordinate columns.

use std::collections::HashSet;
use std::fmt;
use std::ops::Mul;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::graphs::{classify, CoxeterGraph, DiagramType, GraphAutomorphism};
use crate::{Error, Result};

/// Default cap for [`CartanData::group_order`].
pub const ORDER_CAP: u64 = 4_000_000;

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix { n, data: rows.concat() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { n: self.n, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        IntMatrix { n, data }
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub type GroupElement = IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Exact(u64),
    Overflow,
}

/// Positive integers `d` with `d_i a_ij = d_j a_ji` (primitive per component).
pub fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    for s in 0..n {
        if d[s].is_some() {
            continue;
        }
        d[s] = Some(Ratio::from_integer(1));
        let mut stack = vec![s];
        let mut comp = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let dj = d[i].unwrap() * Ratio::new(a[i][j], a[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                        comp.push(j);
                    }
                    Some(x) if x != dj => return Err(Error::invalid("Cartan matrix is not symmetrizable")),
                    _ => {}
                }
            }
        }
        let l = comp.iter().fold(1i64, |acc, &i| num_integer::lcm(acc, *d[i].unwrap().denom()));
        for &i in &comp {
            d[i] = Some(d[i].unwrap() * l);
        }
    }
    Ok(d.into_iter().map(|x| x.unwrap().to_integer()).collect())
}

fn reflect(a: &[Vec<i64>], i: usize, v: &mut [i64]) {
    let c: i64 = (0..v.len()).map(|j| a[i][j] * v[j]).sum();
    v[i] -= c;
}

/// Positive roots of a finite-type Cartan matrix, sorted by height then
/// lexicographically. Errors if the closure exceeds `limit` roots.
fn positive_roots_of(a: &[Vec<i64>], limit: usize) -> Result<Vec<Vec<i64>>> {
    let n = a.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push(e);
    }
    let mut k = 0;
    while k < queue.len() {
        let v = queue[k].clone();
        k += 1;
        for i in 0..n {
            let mut w = v.clone();
            reflect(a, i, &mut w);
            if w.iter().all(|&x| x >= 0) && seen.insert(w.clone()) {
                if seen.len() > limit {
                    return Err(Error::NotFinite("root closure does not terminate".into()));
                }
                queue.push(w);
            }
        }
    }
    queue.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| x.cmp(y))
    });
    Ok(queue)
}

/// Highest root (coefficients in the simple roots) of a connected finite type.
pub fn highest_root(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let roots = positive_roots_of(a, 10_000)?;
    Ok(roots.last().unwrap().clone())
}

/// The reflection representation attached to a Coxeter graph.
#[derive(Clone, Debug)]
pub struct CartanData {
    pub graph: CoxeterGraph,
    pub cartan: Vec<Vec<i64>>,
    kind: DiagramType,
    positive: Option<Vec<Vec<i64>>>,
}

pub fn reflection_rep(g: &CoxeterGraph) -> Result<CartanData> {
    CartanData::new(g)
}

impl CartanData {
    pub fn new(g: &CoxeterGraph) -> Result<Self> {
        let cartan = g.cartan_matrix()?;
        let kind = classify(g);
        let positive = if kind.is_finite() { Some(positive_roots_of(&cartan, 100_000)?) } else { None };
        Ok(CartanData { graph: g.clone(), cartan, kind, positive })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn diagram_type(&self) -> &DiagramType {
        &self.kind
    }

    fn require_finite(&self) -> Result<&[Vec<i64>]> {
        self.positive.as_deref().ok_or_else(|| Error::NotFinite(self.kind.to_string()))
    }

    pub fn simple_reflection(&self, i: usize) -> GroupElement {
        let n = self.rank();
        let mut m = IntMatrix::identity(n);
        for j in 0..n {
            m.data[i * n + j] -= self.cartan[i][j];
        }
        m
    }

    /// `s_i(v)` for a root-coordinate vector.
    pub fn reflect(&self, i: usize, v: &mut [i64]) {
        reflect(&self.cartan, i, v)
    }

    /// `w · s_i`, computed by a column update.
    pub fn mul_simple_right(&self, w: &GroupElement, i: usize) -> GroupElement {
        let n = self.rank();
        let mut out = w.clone();
        for j in 0..n {
            let a = self.cartan[i][j];
            if a != 0 {
                for r in 0..n {
                    out.data[r * n + j] -= a * w.data[r * n + i];
                }
            }
        }
        out
    }

    /// `s_i · w`, computed by a row update.
    pub fn mul_simple_left(&self, i: usize, w: &GroupElement) -> GroupElement {
        let n = self.rank();
        let mut out = w.clone();
        for c in 0..n {
            let s: i64 = (0..n).map(|j| self.cartan[i][j] * w.data[j * n + c]).sum();
            out.data[i * n + c] -= s;
        }
        out
    }

    pub fn word_to_element(&self, word: &[usize]) -> GroupElement {
        word.iter().fold(IntMatrix::identity(self.rank()), |w, &i| self.mul_simple_right(&w, i))
    }

    pub fn positive_roots(&self) -> Result<Vec<Vec<i64>>> {
        Ok(self.require_finite()?.to_vec())
    }

    /// Number of positive roots sent to negative roots.
    pub fn element_length(&self, w: &GroupElement) -> Result<usize> {
        let roots = self.require_finite()?;
        Ok(roots.iter().filter(|r| is_negative(&w.apply(r))).count())
    }

    /// Right descent set `{i : ℓ(w s_i) < ℓ(w)}`, i.e. `w(α_i) < 0`.
    pub fn right_descents(&self, w: &GroupElement) -> Vec<bool> {
        (0..self.rank()).map(|i| is_negative(&w.column(i))).collect()
    }

    /// Longest element with its greedy reduced word (smallest index first).
    pub fn longest_element(&self) -> Result<(GroupElement, Vec<usize>)> {
        let roots = self.require_finite()?;
        let mut w = IntMatrix::identity(self.rank());
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| !is_negative(&w.column(i))) {
            w = self.mul_simple_right(&w, i);
            word.push(i);
        }
        debug_assert_eq!(word.len(), roots.len());
        Ok((w, word))
    }

    /// Reduced word for `w`, peeling smallest right descents.
    pub fn reduced_word(&self, w: &GroupElement) -> Result<Vec<usize>> {
        self.require_finite()?;
        let mut w = w.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| is_negative(&w.column(i))) {
            w = self.mul_simple_right(&w, i);
            word.push(i);
        }
        if !w.is_identity() {
            return Err(Error::invalid("matrix is not in the Weyl group"));
        }
        word.reverse();
        Ok(word)
    }

    /// The permutation `ι` with `w_0 s_i w_0 = s_ι(i)`.
    pub fn canonical_involution(&self) -> Result<GraphAutomorphism> {
        let (w0, _) = self.longest_element()?;
        let refl: Vec<GroupElement> = (0..self.rank()).map(|i| self.simple_reflection(i)).collect();
        let perm = (0..self.rank())
            .map(|i| {
                let c = &(&w0 * &refl[i]) * &w0;
                refl.iter().position(|s| *s == c).expect("w0 s_i w0 is a simple reflection")
            })
            .collect();
        Ok(GraphAutomorphism { perm })
    }

    /// Breadth-first enumeration of the group.
    ///
    /// Each matrix `w` is recorded through the row vector `f·w` with
    /// `f = (1, 2, …, n)`: `f` is interior to the fundamental chamber of the
    /// dual representation, so `w ↦ f·w` is injective and right
    /// multiplication by `s_i` acts on fingerprints by the same column update.
    /// No diagram symmetry fixes `f`, so `−f` is in the orbit iff `−1 ∈ W`.
    pub fn group_order(&self, cap: u64) -> GroupOrder {
        self.orbit_size(cap, false)
    }

    /// Order of `W / (W ∩ {±1})`.
    pub fn projective_order(&self, cap: u64) -> GroupOrder {
        self.orbit_size(cap, true)
    }

    fn orbit_size(&self, cap: u64, projective: bool) -> GroupOrder {
        let n = self.rank();
        let a = &self.cartan;
        let step = |f: &[i64], i: usize| -> Vec<i64> {
            let mut g = f.to_vec();
            for j in 0..n {
                g[j] -= f[i] * a[i][j];
            }
            g
        };
        let start: Vec<i64> = (1..=n as i64).collect();
        if n <= 8 {
            let pack = |v: &[i64]| -> Option<u128> {
                let mut key = 0u128;
                for &x in v {
                    let x = i16::try_from(x).ok()?;
                    key = (key << 16) | (x as u16 as u128);
                }
                Some(key)
            };
            let canon = |v: &[i64]| -> Option<u128> {
                let k = pack(v)?;
                if projective {
                    let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                    Some(k.min(pack(&neg)?))
                } else {
                    Some(k)
                }
            };
            let mut seen: HashSet<u128> = HashSet::new();
            seen.insert(canon(&start).unwrap());
            let mut frontier = vec![start];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for f in &frontier {
                    for i in 0..n {
                        let g = step(f, i);
                        let Some(k) = canon(&g) else { return GroupOrder::Overflow };
                        if seen.insert(k) {
                            if seen.len() as u64 > cap {
                                return GroupOrder::Overflow;
                            }
                            next.push(g);
                        }
                    }
                }
                frontier = next;
            }
            GroupOrder::Exact(seen.len() as u64)
        } else {
            let canon = |v: Vec<i64>| -> Vec<i64> {
                if projective {
                    let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                    v.min(neg)
                } else {
                    v
                }
            };
            let mut seen: HashSet<Vec<i64>> = HashSet::new();
            seen.insert(canon(start.clone()));
            let mut frontier = vec![start];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for f in &frontier {
                    for i in 0..n {
                        let g = step(f, i);
                        if seen.insert(canon(g.clone())) {
                            if seen.len() as u64 > cap {
                                return GroupOrder::Overflow;
                            }
                            next.push(g);
                        }
                    }
                }
                frontier = next;
            }
            GroupOrder::Exact(seen.len() as u64)
        }
    }
}

/// Root vectors are sign-coherent, so the first nonzero coordinate decides.
pub fn is_negative(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{parse_graph, Family};

    fn cd(name: &str) -> CartanData {
        reflection_rep(&parse_graph(name).unwrap()).unwrap()
    }

    #[test]
    fn small_matrices() {
        let a2 = cd("A2");
        assert_eq!(a2.simple_reflection(0).rows(), vec![vec![-1, 1], vec![0, 1]]);
        assert_eq!(cd("A1").simple_reflection(0).rows(), vec![vec![-1]]);
        assert_eq!(cd("A1~").cartan, vec![vec![2, -2], vec![-2, 2]]);
        let b = parse_graph("graph { n=2; edges: 1-2:4 }").unwrap();
        assert!(matches!(reflection_rep(&b), Err(Error::MissingOrientation(..))));
    }

    #[test]
    fn lengths() {
        let a2 = cd("A2");
        assert_eq!(a2.element_length(&IntMatrix::identity(2)).unwrap(), 0);
        assert_eq!(a2.element_length(&a2.simple_reflection(0)).unwrap(), 1);
        let (w0, word) = a2.longest_element().unwrap();
        assert_eq!(word, vec![0, 1, 0]);
        assert_eq!(a2.element_length(&w0).unwrap(), 3);
        for (name, len) in [("A7", 28), ("E6", 36), ("E7", 63), ("D5", 20), ("A1", 1)] {
            let c = cd(name);
            let (w0, word) = c.longest_element().unwrap();
            assert_eq!(word.len(), len, "{name}");
            assert_eq!(c.positive_roots().unwrap().len(), len);
            assert!((&w0 * &w0).is_identity());
            assert_eq!(c.element_length(&w0).unwrap(), len);
        }
        assert!(cd("A2~").longest_element().is_err());
    }

    #[test]
    fn involutions() {
        let perm = |n: &str| cd(n).canonical_involution().unwrap().perm;
        assert_eq!(perm("A3"), vec![2, 1, 0]);
        assert_eq!(perm("D4"), vec![0, 1, 2, 3]);
        assert_eq!(perm("E6"), vec![5, 1, 4, 3, 2, 0]);
        assert_eq!(perm("D5"), vec![0, 1, 2, 4, 3]);
        assert_eq!(perm("E7"), (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn orders_match_catalogue() {
        for family in Family::ALL {
            for rank in 1..=7 {
                if !family.finite_rank_ok(rank) {
                    continue;
                }
                let g = crate::graphs::builtin(family, rank, false).unwrap();
                let c = reflection_rep(&g).unwrap();
                let expected = classify(&g).weyl_order().unwrap() as u64;
                if expected > 100_000 {
                    continue;
                }
                assert_eq!(c.group_order(ORDER_CAP), GroupOrder::Exact(expected), "{family}{rank}");
            }
        }
        assert_eq!(cd("A2~").group_order(1000), GroupOrder::Overflow);
        assert_eq!(cd("A1~").group_order(1000), GroupOrder::Overflow);
        assert_eq!(cd("E6").projective_order(ORDER_CAP), GroupOrder::Exact(51840));
        assert_eq!(cd("D5").projective_order(ORDER_CAP), GroupOrder::Exact(1920));
        assert_eq!(cd("D4").projective_order(ORDER_CAP), GroupOrder::Exact(96));
    }

    #[test]
    fn coxeter_relations_hold() {
        for name in ["A4", "B4", "C3", "D5", "E6", "F4", "G2", "B3~", "G2~", "A1~"] {
            let c = cd(name);
            let g = &c.graph;
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    let m = g.mult(i, j);
                    if m == crate::graphs::INF {
                        continue;
                    }
                    let p = &c.simple_reflection(i) * &c.simple_reflection(j);
                    let mut acc = IntMatrix::identity(c.rank());
                    for _ in 0..m {
                        acc = &acc * &p;
                    }
                    assert!(acc.is_identity(), "{name} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(symmetrizer(&cd("B3").cartan).unwrap(), vec![2, 2, 1]);
        assert_eq!(symmetrizer(&cd("C3").cartan).unwrap(), vec![1, 1, 2]);
        assert_eq!(symmetrizer(&cd("G2").cartan).unwrap(), vec![1, 3]);
        assert_eq!(highest_root(&cd("E8").cartan).unwrap(), vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }
}
