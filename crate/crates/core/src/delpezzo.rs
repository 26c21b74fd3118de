//! The Lobatchevski lattice `Λ_{1,r}`: roots, exceptional vectors, Weyl
//! orbits, homological Del Pezzo structures, the degree-two limit marking
//! and the theta-characteristic torsor.
//!
//! A vector is stored as its coefficients `(a; c_1, …, c_r)` in the basis
//! `l, e_1, …, e_r`, so `e_1 = [0, 1, 0, …]` and `k = [3, -1, …, -1]`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graphs::{classify, CoxeterGraph, DiagramType};
use crate::lattice::{determinant, smith_form, to_big};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PicardVector {
    pub coords: Vec<i64>,
}

impl Serialize for PicardVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl fmt::Display for PicardVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        let mut push = |c: i64, name: String| {
            if c == 0 {
                return;
            }
            let sign = if c < 0 { "-" } else if terms.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            terms.push(format!("{sign}{mag}{name}"));
        };
        push(self.coords[0], "l".into());
        for (i, &c) in self.coords[1..].iter().enumerate() {
            push(c, format!("e{}", i + 1));
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(""))
        }
    }
}

impl PicardVector {
    pub fn new(coords: Vec<i64>) -> Self {
        PicardVector { coords }
    }

    pub fn zero(r: usize) -> Self {
        PicardVector { coords: vec![0; r + 1] }
    }

    pub fn l(r: usize) -> Self {
        let mut v = Self::zero(r);
        v.coords[0] = 1;
        v
    }

    /// `e_i`, `1 ≤ i ≤ r`.
    pub fn e(r: usize, i: usize) -> Self {
        let mut v = Self::zero(r);
        v.coords[i] = 1;
        v
    }

    /// The anticanonical class `3l − e_1 − ⋯ − e_r`.
    pub fn k(r: usize) -> Self {
        let mut v = Self::zero(r);
        v.coords[0] = 3;
        for c in &mut v.coords[1..] {
            *c = -1;
        }
        v
    }

    pub fn rank(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn dot(&self, other: &PicardVector) -> i64 {
        self.coords[0] * other.coords[0]
            - self.coords[1..].iter().zip(&other.coords[1..]).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn add(&self, other: &PicardVector) -> PicardVector {
        PicardVector::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &PicardVector) -> PicardVector {
        PicardVector::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: i64) -> PicardVector {
        PicardVector::new(self.coords.iter().map(|a| a * s).collect())
    }

    /// Reflection in a root: `v ↦ v + (v·α) α`.
    pub fn reflect(&self, alpha: &PicardVector) -> PicardVector {
        self.add(&alpha.scale(self.dot(alpha)))
    }
}

pub fn pairing(u: &PicardVector, v: &PicardVector) -> Result<i64> {
    if u.rank() != v.rank() {
        return Err(Error::RankMismatch(u.rank(), v.rank()));
    }
    Ok(u.dot(v))
}

fn check_rank(r: usize) -> Result<()> {
    if (3..=8).contains(&r) {
        Ok(())
    } else {
        Err(Error::invalid(format!("rank {r} outside 3..=8")))
    }
}

/// `α_1 = l − e_1 − e_2 − e_3`, `α_i = e_{i−1} − e_i`.
pub fn root_basis(r: usize) -> Vec<PicardVector> {
    let mut out = Vec::with_capacity(r);
    let mut a1 = PicardVector::l(r);
    for i in 1..=3 {
        a1.coords[i] = -1;
    }
    out.push(a1);
    for i in 2..=r {
        out.push(PicardVector::e(r, i - 1).sub(&PicardVector::e(r, i)));
    }
    out
}

/// All `v` with `v·v = norm` and `v·k = degree`.
///
/// Writing `l = (3/(9−r)) k + q_l` and `v = (s/(9−r)) k + q` with `q, q_l`
/// in the negative-definite `k^⊥`, Cauchy–Schwarz bounds
/// `|a − 3s/(9−r)|² ≤ (s²/(9−r) − norm) · r/(9−r)`; the `c_i` then satisfy
/// `Σ c_i² = a² − norm` and `Σ c_i = s − 3a`.
pub fn search(r: usize, norm: i64, degree: i64) -> Vec<PicardVector> {
    let d = 9 - r as i64;
    // Compare squares scaled by d²: (d a − 3 s)² ≤ (s² − norm d) r.
    let bound = (degree * degree - norm * d) * r as i64;
    let mut out = Vec::new();
    let amax = (3 * degree.abs() + isqrt(bound) + 1) / d + 1;
    for a in -amax..=amax {
        let dev = d * a - 3 * degree;
        if dev * dev > bound {
            continue;
        }
        let squares = a * a - norm;
        let sum = degree - 3 * a;
        let mut c = vec![0i64; r];
        fill(&mut c, 0, squares, sum, &mut |c| {
            let mut coords = vec![a];
            coords.extend_from_slice(c);
            out.push(PicardVector::new(coords));
        });
    }
    out.sort();
    out
}

fn isqrt(x: i64) -> i64 {
    if x <= 0 {
        return 0;
    }
    let mut s = (x as f64).sqrt() as i64;
    while s * s > x {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= x {
        s += 1;
    }
    s
}

/// Enumerates `c[pos..]` with `Σ c² = squares` and `Σ c = sum`.
fn fill(c: &mut Vec<i64>, pos: usize, squares: i64, sum: i64, emit: &mut dyn FnMut(&[i64])) {
    let left = (c.len() - pos) as i64;
    if squares < 0 || sum * sum > left * squares {
        return;
    }
    if left == 0 {
        if squares == 0 && sum == 0 {
            emit(c);
        }
        return;
    }
    let m = isqrt(squares);
    for x in -m..=m {
        c[pos] = x;
        fill(c, pos + 1, squares - x * x, sum - x, emit);
    }
    c[pos] = 0;
}

/// A set of roots together with its recognized type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSubsystem {
    pub roots: Vec<PicardVector>,
    #[serde(rename = "type", serialize_with = "ser_type")]
    pub diagram: DiagramType,
}

fn ser_type<S: Serializer>(t: &DiagramType, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_string())
}

pub fn roots(r: usize) -> Result<RootSubsystem> {
    check_rank(r)?;
    let roots = search(r, -2, 0);
    let diagram = subsystem_type(&roots)?;
    Ok(RootSubsystem { roots, diagram })
}

pub fn exceptional_vectors(r: usize) -> Result<Vec<PicardVector>> {
    check_rank(r)?;
    Ok(search(r, -1, 1))
}

/// Closure of `seeds` under the reflections in `gens`.
pub fn orbit(seeds: &[PicardVector], gens: &[PicardVector]) -> BTreeSet<PicardVector> {
    let mut seen: BTreeSet<PicardVector> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<PicardVector> = seeds.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        for a in gens {
            let w = v.reflect(a);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

fn lex_positive(v: &PicardVector) -> bool {
    v.coords.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Simple roots of `roots` for the lexicographic positive system.
pub fn simple_roots(roots: &[PicardVector]) -> Vec<PicardVector> {
    let pos: BTreeSet<&PicardVector> = roots.iter().filter(|v| lex_positive(v)).collect();
    let mut simple: Vec<PicardVector> = pos
        .iter()
        .filter(|v| !pos.iter().any(|a| lex_positive(&v.sub(a)) && pos.contains(&v.sub(a))))
        .map(|v| (*v).clone())
        .collect();
    simple.sort();
    simple
}

/// Type of a root system given as a set of vectors of square `−2`.
pub fn subsystem_type(roots: &[PicardVector]) -> Result<DiagramType> {
    if roots.is_empty() {
        return Ok(DiagramType::Reducible(Vec::new()));
    }
    let set: BTreeSet<PicardVector> = roots.iter().cloned().collect();
    if roots.iter().any(|v| v.dot(v) != -2 || !set.contains(&v.scale(-1))) {
        return Err(Error::invalid("not closed under negation or a norm differs from -2"));
    }
    let simple = simple_roots(roots);
    if orbit(&simple, &simple) != set {
        return Err(Error::invalid("simple roots do not regenerate the root set"));
    }
    let n = simple.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            match simple[i].dot(&simple[j]) {
                0 => {}
                1 => edges.push((i, j, 3)),
                x => return Err(Error::invalid(format!("simple roots pair to {x}"))),
            }
        }
    }
    Ok(classify(&CoxeterGraph::with_default_labels(n, &edges)?))
}

/// Intersection-matrix check of a component decomposition of `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DpReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Checks that the classes sum to `k`, that their pairings match
/// `intersections` off the diagonal, and that every exceptional vector
/// pairs nonnegatively with every class other than itself.
pub fn check_dp_structure(components: &[PicardVector], intersections: &[Vec<i64>]) -> Result<DpReport> {
    let r = components.first().ok_or(Error::EmptySubset)?.rank();
    check_rank(r)?;
    let mut violations = Vec::new();
    let total = components.iter().fold(PicardVector::zero(r), |acc, c| acc.add(c));
    if total != PicardVector::k(r) {
        violations.push(format!("(i) components sum to {total}, not k"));
    }
    for (i, a) in components.iter().enumerate() {
        for (j, b) in components.iter().enumerate().skip(i + 1) {
            let want = intersections.get(i).and_then(|row| row.get(j)).copied();
            if want != Some(a.dot(b)) {
                violations.push(format!("(ii) C{i}·C{j} = {} but the curve has {want:?}", a.dot(b)));
            }
        }
    }
    for e in exceptional_vectors(r)? {
        for (i, c) in components.iter().enumerate() {
            if *c != e && e.dot(c) < 0 {
                violations.push(format!("(iii) {e} · C{i} = {}", e.dot(c)));
            }
        }
    }
    Ok(DpReport { ok: violations.is_empty(), violations })
}

/// Image in `Hom(Q_r, ℤ)`: pairings with the root basis.
pub fn weight(v: &PicardVector) -> Vec<i64> {
    root_basis(v.rank()).iter().map(|a| v.dot(a)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoComponentOrbit {
    pub representative: (PicardVector, PicardVector),
    pub weights: (Vec<i64>, Vec<i64>),
    #[serde(serialize_with = "ser_type")]
    pub kernel: DiagramType,
    pub orbit_size: usize,
}

fn ordered(a: PicardVector, b: PicardVector) -> (PicardVector, PicardVector) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Candidate classes `c` for a splitting `k = c + c'`.
///
/// If neither class is exceptional, pairing nonnegatively with `e_i`,
/// `l − e_1 − e_2` and their sum constraint gives `0 ≤ a ≤ 3`, `c_i ∈ {−1, 0}`;
/// otherwise one of them is exceptional.
fn splitting_candidates(r: usize) -> Result<Vec<PicardVector>> {
    let mut out: BTreeSet<PicardVector> = BTreeSet::new();
    for a in 0..=3 {
        for mask in 0u32..(1 << r) {
            let mut coords = vec![a];
            coords.extend((0..r).map(|i| if mask >> i & 1 == 1 { -1 } else { 0 }));
            out.insert(PicardVector::new(coords));
        }
    }
    let k = PicardVector::k(r);
    for e in exceptional_vectors(r)? {
        out.insert(k.sub(&e));
        out.insert(e);
    }
    Ok(out.into_iter().collect())
}

/// All two-component structures `(c, k − c)` with `c·(k − c) = 2`, grouped
/// into `W_r`-orbits of unordered pairs, each with its lexicographically
/// smallest representative.
pub fn classify_two_component_structures(d: usize) -> Result<Vec<TwoComponentOrbit>> {
    if !(2..=5).contains(&d) {
        return Err(Error::invalid(format!("degree {d} outside 2..=5")));
    }
    let r = 9 - d;
    let k = PicardVector::k(r);
    let exc = exceptional_vectors(r)?;
    let mut pairs: BTreeSet<(PicardVector, PicardVector)> = BTreeSet::new();
    for c in splitting_candidates(r)? {
        let cc = k.sub(&c);
        if c.dot(&cc) != 2 {
            continue;
        }
        let ok = exc.iter().all(|e| (*e == c || e.dot(&c) >= 0) && (*e == cc || e.dot(&cc) >= 0));
        if ok {
            pairs.insert(ordered(c, cc));
        }
    }
    let basis = root_basis(r);
    let all_roots = roots(r)?.roots;
    let mut out = Vec::new();
    let mut remaining = pairs.clone();
    while let Some(start) = remaining.iter().next().cloned() {
        let mut orb: BTreeSet<(PicardVector, PicardVector)> = BTreeSet::new();
        orb.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some((a, b)) = queue.pop_front() {
            for s in &basis {
                let p = ordered(a.reflect(s), b.reflect(s));
                if orb.insert(p.clone()) {
                    queue.push_back(p);
                }
            }
        }
        if !orb.is_subset(&pairs) {
            return Err(Error::invalid("an orbit leaves the set of structures"));
        }
        for p in &orb {
            remaining.remove(p);
        }
        let rep = orb.iter().next().unwrap().clone();
        let kernel_roots: Vec<PicardVector> = all_roots.iter().filter(|a| a.dot(&rep.0) == 0).cloned().collect();
        out.push(TwoComponentOrbit {
            weights: (weight(&rep.0), weight(&rep.1)),
            kernel: subsystem_type(&kernel_roots)?,
            orbit_size: orb.len(),
            representative: rep,
        });
    }
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

/// One symbol `E^±_A`, `A = {p_i, p_j}`, with its marking vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedCurve {
    pub sign: i8,
    pub points: (usize, usize),
    pub vector: PicardVector,
}

/// The marking at `r = 7` obtained by numbering the eight points `p_0..p_7`:
/// `E^-_{0i} = e_i`, `E^-_{ij} = (2l − Σe) + e_i + e_j`, `E^+_{ij} = l − e_i − e_j`,
/// `E^+_{0i} = k − e_i`.
pub fn limit_marking() -> Vec<MarkedCurve> {
    let r = 7;
    let e = |i: usize| PicardVector::e(r, i);
    let l = PicardVector::l(r);
    let sum_e = (1..=r).fold(PicardVector::zero(r), |acc, i| acc.add(&e(i)));
    let k = PicardVector::k(r);
    let mut out = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            let (minus, plus) = if i == 0 {
                (e(j), k.sub(&e(j)))
            } else {
                (l.scale(2).sub(&sum_e).add(&e(i)).add(&e(j)), l.sub(&e(i)).sub(&e(j)))
            };
            out.push(MarkedCurve { sign: -1, points: (i, j), vector: minus });
            out.push(MarkedCurve { sign: 1, points: (i, j), vector: plus });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkingReport {
    pub symbols: usize,
    pub checks: usize,
    pub failures: Vec<String>,
    pub sign_is_l_parity: bool,
    pub distinct_and_exhaustive: bool,
    #[serde(serialize_with = "ser_type")]
    pub beta_type: DiagramType,
    #[serde(serialize_with = "ser_type")]
    pub even_root_type: DiagramType,
}

impl MarkingReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
            && self.checks == 1596
            && self.sign_is_l_parity
            && self.distinct_and_exhaustive
            && self.beta_type.to_string() == "A7"
            && self.even_root_type.to_string() == "A7"
    }
}

/// Expected pairing of two distinct symbols from the intersection table.
fn expected_pairing(a: &MarkedCurve, b: &MarkedCurve) -> i64 {
    let (x, y) = (a.points, b.points);
    let shared = [x.0, x.1].iter().filter(|p| **p == y.0 || **p == y.1).count();
    let same = a.sign == b.sign;
    match (shared, same) {
        (2, _) => 2,
        (1, true) | (0, false) => 0,
        (1, false) | (0, true) => 1,
        _ => unreachable!(),
    }
}

pub fn limit_marking_check() -> Result<MarkingReport> {
    let r = 7;
    let marks = limit_marking();
    let exc: BTreeSet<PicardVector> = exceptional_vectors(r)?.into_iter().collect();
    let mut failures = Vec::new();
    let mut checks = 0;
    for m in &marks {
        checks += 1;
        if !exc.contains(&m.vector) {
            failures.push(format!("{} is not exceptional", m.vector));
        }
    }
    for (i, a) in marks.iter().enumerate() {
        for b in &marks[i + 1..] {
            checks += 1;
            let (got, want) = (a.vector.dot(&b.vector), expected_pairing(a, b));
            if got != want {
                failures.push(format!("E{:?}{:+} · E{:?}{:+} = {got}, expected {want}", a.points, a.sign, b.points, b.sign));
            }
        }
    }
    let sign_is_l_parity = marks.iter().all(|m| (m.vector.coords[0].rem_euclid(2) == 1) == (m.sign > 0));
    let assigned: BTreeSet<PicardVector> = marks.iter().map(|m| m.vector.clone()).collect();
    let distinct_and_exhaustive = assigned.len() == marks.len() && assigned == exc;
    let mut beta = vec![PicardVector::new(vec![-2, 0, 1, 1, 1, 1, 1, 1])];
    for i in 1..r {
        beta.push(PicardVector::e(r, i).sub(&PicardVector::e(r, i + 1)));
    }
    let beta_roots: Vec<PicardVector> = orbit(&beta, &beta).into_iter().collect();
    let beta_type = subsystem_type(&beta_roots)?;
    let even: Vec<PicardVector> = roots(r)?.roots.into_iter().filter(|v| v.coords[0] % 2 == 0).collect();
    let even_root_type = if even.iter().cloned().collect::<BTreeSet<_>>() == beta_roots.iter().cloned().collect() {
        subsystem_type(&even)?
    } else {
        DiagramType::Indefinite
    };
    Ok(MarkingReport {
        symbols: marks.len(),
        checks,
        failures,
        sign_is_l_parity,
        distinct_and_exhaustive,
        beta_type,
        even_root_type,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    /// `[Q : 2Q*] = 2^r / det` via the Smith form of the Cartan matrix.
    pub torsor_size_smith: u64,
    /// Number of residues of `Q[1]` in `Q*/2Q*`, by closure over `𝔽_2`.
    pub torsor_size_enumerated: u64,
    pub exceptional_classes: usize,
    pub pairs_share_class: bool,
    pub two_per_class: bool,
}

impl ThetaReport {
    pub fn pass(&self) -> bool {
        self.torsor_size_smith == 64
            && self.torsor_size_enumerated == 64
            && self.exceptional_classes == 28
            && self.pairs_share_class
            && self.two_per_class
    }
}

fn mod2(w: &[i64]) -> Vec<u8> {
    w.iter().map(|x| x.rem_euclid(2) as u8).collect()
}

pub fn theta_torsor_check() -> Result<ThetaReport> {
    let r = 7;
    let basis = root_basis(r);
    let cartan: Vec<Vec<i64>> = basis.iter().map(|a| basis.iter().map(|b| -a.dot(b)).collect()).collect();
    let det = determinant(&cartan);
    let snf = smith_form(&to_big(&cartan)).product();
    if det != snf && det != -snf.clone() {
        return Err(Error::invalid("Smith form and determinant disagree"));
    }
    let det: u64 = snf.try_into().map_err(|_| Error::invalid("determinant overflow"))?;
    let torsor_size_smith = (1u64 << r) / det;

    let base = mod2(&weight(&PicardVector::e(r, r)));
    let steps: Vec<Vec<u8>> = basis.iter().map(|a| mod2(&weight(a))).collect();
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::from([base.clone()]);
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for s in &steps {
            let w: Vec<u8> = v.iter().zip(s).map(|(a, b)| a ^ b).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let torsor_size_enumerated = seen.len() as u64;

    let k = PicardVector::k(r);
    let exc = exceptional_vectors(r)?;
    let mut classes: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for e in &exc {
        *classes.entry(mod2(&weight(e))).or_default() += 1;
    }
    let pairs_share_class = exc.iter().all(|e| mod2(&weight(e)) == mod2(&weight(&k.sub(e))));
    let in_torsor = classes.keys().all(|c| seen.contains(c));
    Ok(ThetaReport {
        torsor_size_smith,
        torsor_size_enumerated,
        exceptional_classes: if in_torsor { classes.len() } else { 0 },
        pairs_share_class,
        two_per_class: classes.values().all(|&n| n == 2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&PicardVector::k(6), &PicardVector::k(6)).unwrap(), 3);
        assert_eq!(pairing(&PicardVector::e(6, 1), &PicardVector::e(6, 1)).unwrap(), -1);
        assert_eq!(pairing(&PicardVector::l(6), &PicardVector::k(6)).unwrap(), 3);
        assert!(pairing(&PicardVector::l(6), &PicardVector::l(5)).is_err());
        assert_eq!(PicardVector::k(4).to_string(), "3l-e1-e2-e3-e4");
    }

    #[test]
    fn counts_and_types() {
        let want = [(3, 8, 6, "A2+A1"), (4, 20, 10, "A4"), (5, 40, 16, "D5"), (6, 72, 27, "E6"), (7, 126, 56, "E7")];
        for (r, nr, ne, t) in want {
            let rs = roots(r).unwrap();
            assert_eq!(rs.roots.len(), nr, "r={r}");
            assert_eq!(rs.diagram.to_string(), t, "r={r}");
            assert_eq!(exceptional_vectors(r).unwrap().len(), ne, "r={r}");
        }
        assert!(roots(2).is_err() && roots(9).is_err());
    }

    #[test]
    fn orbits_agree_with_search() {
        for r in 3..=7 {
            let basis = root_basis(r);
            let exc: BTreeSet<PicardVector> = exceptional_vectors(r).unwrap().into_iter().collect();
            assert_eq!(orbit(&[PicardVector::e(r, 1)], &basis), exc);
            let rts: BTreeSet<PicardVector> = roots(r).unwrap().roots.into_iter().collect();
            assert_eq!(orbit(&basis, &basis), rts);
        }
    }

    #[test]
    fn subsystem_examples() {
        let a = PicardVector::e(5, 1).sub(&PicardVector::e(5, 2));
        assert_eq!(subsystem_type(&[a.clone(), a.scale(-1)]).unwrap().to_string(), "A1");
        assert!(subsystem_type(std::slice::from_ref(&a)).is_err());
    }

    #[test]
    fn dp_structures() {
        let k6 = PicardVector::k(6);
        assert!(check_dp_structure(&[k6], &[vec![0]]).unwrap().ok);
        let (e7, k7) = (PicardVector::e(7, 7), PicardVector::k(7));
        let two = vec![vec![0, 2], vec![2, 0]];
        assert!(check_dp_structure(&[e7.clone(), k7.sub(&e7)], &two).unwrap().ok);
        let bad = check_dp_structure(&[PicardVector::e(7, 1), k7.sub(&PicardVector::e(7, 2))], &two).unwrap();
        assert!(!bad.ok && bad.violations[0].starts_with("(i)"));
    }

    #[test]
    fn two_component_table() {
        let table = |d| -> Vec<(String, String, String)> {
            classify_two_component_structures(d)
                .unwrap()
                .into_iter()
                .map(|o| (o.representative.0.to_string(), o.representative.1.to_string(), o.kernel.to_string()))
                .collect()
        };
        assert_eq!(table(3), [("e6".to_string(), "3l-e1-e2-e3-e4-e5-2e6".to_string(), "D5".to_string())]);
        let t4 = table(4);
        assert_eq!(t4.len(), 2);
        // Removing the spin node ϖ5 of D5 leaves A4, the vector node ϖ2 leaves D4.
        assert!(t4.contains(&("e5".into(), "3l-e1-e2-e3-e4-2e5".into(), "A4".into())));
        assert!(t4.contains(&("l-e1".into(), "2l-e2-e3-e4-e5".into(), "D4".into())));
        let mut k5: Vec<String> = table(5).into_iter().map(|t| t.2).collect();
        k5.sort();
        assert_eq!(k5, ["A2+A1", "A3"]);
        let t2 = table(2);
        assert_eq!(t2.len(), 1);
        assert_eq!(t2[0].2, "E6");
    }

    #[test]
    fn marking_and_theta() {
        let m = limit_marking_check().unwrap();
        assert!(m.pass(), "{m:?}");
        let t = theta_torsor_check().unwrap();
        assert!(t.pass(), "{t:?}");
    }
}
