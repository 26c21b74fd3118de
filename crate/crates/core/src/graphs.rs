//! Coxeter graphs, the Bourbaki catalogue and classification by exact
//! isomorphism matching.
//!
//! Multiplicities are restricted to `{2, 3, 4, 6, ∞}`. Edges with `m = 4`
//! or `m = 6` may carry an orientation naming the short root, which fixes
//! the integral Cartan matrix (Bourbaki's arrow points to the short root).

use std::collections::BTreeSet;
use std::fmt;

use crate::weylrep;
use crate::{Error, Result};

/// Multiplicity of an edge with no braid relation.
pub const INF: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    labels: Vec<String>,
    mult: Vec<u32>,
    /// `(i, j)` with `m_ij ∈ {4, 6}`, `α_i` short and `α_j` long.
    short_long: BTreeSet<(usize, usize)>,
}

fn check_mult(m: u32) -> Result<()> {
    match m {
        2 | 3 | 4 | 6 | INF => Ok(()),
        _ => Err(Error::Multiplicity(m.to_string())),
    }
}

impl CoxeterGraph {
    /// Graph on `labels` with the given edges `(i, j, m)`; unlisted pairs get `m = 2`.
    pub fn new(labels: Vec<String>, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptySubset);
        }
        let mut mult = vec![2; n * n];
        for i in 0..n {
            mult[i * n + i] = 1;
        }
        for &(i, j, m) in edges {
            if i >= n || j >= n {
                return Err(Error::invalid(format!("edge {i}-{j} out of range")));
            }
            if i == j {
                return Err(Error::invalid(format!("loop at vertex {i}")));
            }
            check_mult(m)?;
            mult[i * n + j] = m;
            mult[j * n + i] = m;
        }
        Ok(CoxeterGraph { labels, mult, short_long: BTreeSet::new() })
    }

    /// Graph with labels `"1".."n"`.
    pub fn with_default_labels(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()).collect(), edges)
    }

    /// Declares `short` to be the short end of the `m ∈ {4,6}` edge `short`-`long`.
    pub fn orient(mut self, short: usize, long: usize) -> Result<Self> {
        let m = self.mult(short, long);
        if m != 4 && m != 6 {
            return Err(Error::invalid(format!(
                "cannot orient edge {}-{} of multiplicity {}",
                self.labels[short],
                self.labels[long],
                mult_name(m)
            )));
        }
        self.short_long.remove(&(long, short));
        self.short_long.insert((short, long));
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mult(&self, i: usize, j: usize) -> u32 {
        self.mult[i * self.labels.len() + j]
    }

    /// Edges `(i, j, m)` with `i < j` and `m ≠ 2`.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let m = self.mult(i, j);
                if m != 2 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&j| j != i && self.mult(i, j) != 2).collect()
    }

    pub fn orientations(&self) -> &BTreeSet<(usize, usize)> {
        &self.short_long
    }

    pub fn is_simply_laced(&self) -> bool {
        self.edges().iter().all(|&(_, _, m)| m == 3)
    }

    /// True when every edge of multiplicity 4 or 6 carries an orientation.
    pub fn is_oriented(&self) -> bool {
        self.edges().iter().all(|&(i, j, m)| {
            !(m == 4 || m == 6)
                || self.short_long.contains(&(i, j))
                || self.short_long.contains(&(j, i))
        })
    }

    /// Cartan entry `a_ij`, or `None` for an unoriented 4- or 6-edge.
    pub fn cartan_entry(&self, i: usize, j: usize) -> Option<i64> {
        if i == j {
            return Some(2);
        }
        let big = match self.mult(i, j) {
            2 => return Some(0),
            3 => return Some(-1),
            INF => return Some(-2),
            4 => -2,
            6 => -3,
            _ => unreachable!(),
        };
        if self.short_long.contains(&(i, j)) {
            Some(big)
        } else if self.short_long.contains(&(j, i)) {
            Some(-1)
        } else {
            None
        }
    }

    pub fn cartan_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.vertex_count();
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = self.cartan_entry(i, j).ok_or_else(|| {
                    Error::MissingOrientation(self.labels[i].clone(), self.labels[j].clone())
                })?;
            }
        }
        Ok(a)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                k += 1;
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Same graph with vertices renamed; `perm[i]` is the new index of vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> CoxeterGraph {
        let n = self.vertex_count();
        let mut labels = vec![String::new(); n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
        }
        let mut mult = vec![1; n * n];
        for i in 0..n {
            for j in 0..n {
                mult[perm[i] * n + perm[j]] = self.mult(i, j);
            }
        }
        let short_long = self.short_long.iter().map(|&(i, j)| (perm[i], perm[j])).collect();
        CoxeterGraph { labels, mult, short_long }
    }

    /// Edge list in the custom graph grammar (labels are not recorded).
    pub fn to_grammar(&self) -> String {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(i, j, m)| {
                let mut s = format!("{}-{}", i + 1, j + 1);
                if m != 3 {
                    s.push(':');
                    s.push_str(&mult_name(m));
                }
                if self.short_long.contains(&(i, j)) {
                    s.push('<');
                } else if self.short_long.contains(&(j, i)) {
                    s.push('>');
                }
                s
            })
            .collect();
        format!("graph {{ n={}; edges: {} }}", self.vertex_count(), edges.join(", "))
    }
}

pub fn mult_name(m: u32) -> String {
    if m == INF {
        "inf".into()
    } else {
        m.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphAutomorphism {
    pub perm: Vec<usize>,
}

impl GraphAutomorphism {
    pub fn identity(n: usize) -> Self {
        GraphAutomorphism { perm: (0..n).collect() }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GraphAutomorphism) -> GraphAutomorphism {
        GraphAutomorphism { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn inverse(&self) -> GraphAutomorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        GraphAutomorphism { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut p = self.clone();
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    pub fn preserves(&self, g: &CoxeterGraph) -> bool {
        let n = g.vertex_count();
        (0..n).all(|i| (0..n).all(|j| g.mult(self.perm[i], self.perm[j]) == g.mult(i, j)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] =
        [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

    fn from_char(c: char) -> Option<Family> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    /// Whether `X_rank` is in the finite Bourbaki list.
    pub fn finite_rank_ok(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }

    /// Whether the affine diagram of type `X_rank` is in the Bourbaki list.
    pub fn affine_rank_ok(self, rank: usize) -> bool {
        match self {
            Family::B => rank >= 3,
            Family::C => rank >= 2,
            _ => self.finite_rank_ok(rank),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DiagramType {
    Finite { family: Family, rank: usize },
    Affine { family: Family, rank: usize },
    Indefinite,
    Reducible(Vec<DiagramType>),
}

impl DiagramType {
    /// Finite, possibly reducible with only finite components.
    pub fn is_finite(&self) -> bool {
        match self {
            DiagramType::Finite { .. } => true,
            DiagramType::Reducible(parts) => parts.iter().all(|p| p.is_finite()),
            _ => false,
        }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, DiagramType::Affine { .. })
    }

    /// Closed-form Weyl group order of a finite type.
    pub fn weyl_order(&self) -> Option<u128> {
        match self {
            DiagramType::Finite { family, rank } => Some(finite_weyl_order(*family, *rank)),
            DiagramType::Reducible(parts) => {
                parts.iter().map(|p| p.weyl_order()).try_fold(1u128, |acc, o| Some(acc * o?))
            }
            _ => None,
        }
    }

    /// Long form, e.g. `Affine E7` or `Finite A2+A1`.
    pub fn describe(&self) -> String {
        match self {
            DiagramType::Finite { .. } => format!("Finite {self}"),
            DiagramType::Affine { family, rank } => format!("Affine {family}{rank}"),
            DiagramType::Indefinite => "Indefinite".into(),
            DiagramType::Reducible(_) if self.is_finite() => format!("Finite {self}"),
            DiagramType::Reducible(_) => format!("Reducible {self}"),
        }
    }

    /// Name parsed back by [`parse_graph`] for single-component catalogue types.
    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramType::Finite { family, rank } => write!(f, "{family}{rank}"),
            DiagramType::Affine { family, rank } => write!(f, "{family}{rank}~"),
            DiagramType::Indefinite => write!(f, "Indefinite"),
            DiagramType::Reducible(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", names.join("+"))
            }
        }
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn finite_weyl_order(family: Family, n: usize) -> u128 {
    match family {
        Family::A => factorial(n + 1),
        Family::B | Family::C => (1u128 << n) * factorial(n),
        Family::D => (1u128 << (n - 1)) * factorial(n),
        Family::E => match n {
            6 => 51840,
            7 => 2903040,
            _ => 696729600,
        },
        Family::F => 1152,
        Family::G => 12,
    }
}

fn chain(n: usize) -> Vec<(usize, usize, u32)> {
    (1..n).map(|i| (i - 1, i, 3)).collect()
}

/// Finite diagram with Bourbaki labels `1..n`; `C_2` is allowed internally.
fn finite_diagram(family: Family, n: usize) -> CoxeterGraph {
    let g = |edges: &[(usize, usize, u32)]| CoxeterGraph::with_default_labels(n, edges).unwrap();
    match family {
        Family::A => g(&chain(n)),
        Family::B => {
            let mut e = chain(n);
            e[n - 2].2 = 4;
            g(&e).orient(n - 1, n - 2).unwrap()
        }
        Family::C => {
            let mut e = chain(n);
            e[n - 2].2 = 4;
            g(&e).orient(n - 2, n - 1).unwrap()
        }
        Family::D => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1, 3));
            g(&e)
        }
        Family::E => {
            let mut e = vec![(0, 2, 3), (1, 3, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1, 3)));
            g(&e)
        }
        Family::F => g(&[(0, 1, 3), (1, 2, 4), (2, 3, 3)]).orient(2, 1).unwrap(),
        Family::G => g(&[(0, 1, 6)]).orient(0, 1).unwrap(),
    }
}

/// Catalogue diagram; affine diagrams carry the extra vertex `"0"` at index 0.
pub fn builtin(family: Family, rank: usize, affine: bool) -> Result<CoxeterGraph> {
    let name = format!("{family}{rank}{}", if affine { "~" } else { "" });
    if affine {
        if !family.affine_rank_ok(rank) {
            return Err(Error::UnknownBuiltin(name));
        }
        complete(&finite_diagram(family, rank))
    } else {
        if !family.finite_rank_ok(rank) {
            return Err(Error::UnknownBuiltin(name));
        }
        Ok(finite_diagram(family, rank))
    }
}

/// Parses a builtin name such as `E7~` or the custom grammar
/// `graph { n=3; edges: 1-2, 2-3, 1-3:4> }`.
///
/// A trailing `>` on a 4- or 6-edge `i-j` marks `j` as the short root,
/// `<` marks `i`.
pub fn parse_graph(text: &str) -> Result<CoxeterGraph> {
    let t = text.trim();
    let offset = text.len() - text.trim_start().len();
    if t.starts_with("graph") {
        return Parser { s: text.as_bytes(), pos: offset }.custom();
    }
    let mut chars = t.chars();
    let family = chars
        .next()
        .and_then(Family::from_char)
        .ok_or_else(|| Error::UnknownBuiltin(t.to_string()))?;
    let rest = &t[1..];
    let (digits, affine) = match rest.strip_suffix('~') {
        Some(d) => (d, true),
        None => (rest, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::UnknownBuiltin(t.to_string()));
    }
    let rank: usize = digits.parse().map_err(|_| Error::UnknownBuiltin(t.to_string()))?;
    if rank > 64 {
        return Err(Error::UnknownBuiltin(t.to_string()));
    }
    builtin(family, rank, affine)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> Result<()> {
        self.ws();
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{tok}`")))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<usize> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::parse(start, "expected integer"))
    }

    fn custom(&mut self) -> Result<CoxeterGraph> {
        self.eat("graph")?;
        self.eat("{")?;
        self.eat("n")?;
        self.eat("=")?;
        let n_pos = self.pos;
        let n = self.int()?;
        if n == 0 {
            return Err(Error::parse(n_pos, "n must be positive"));
        }
        self.eat(";")?;
        self.eat("edges")?;
        self.eat(":")?;
        let mut edges = Vec::new();
        let mut orient = Vec::new();
        if self.peek() != Some(b'}') {
            loop {
                let at = self.pos;
                let i = self.int()?;
                self.eat("-")?;
                let j = self.int()?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(Error::parse(at, format!("vertex out of range 1..{n}")));
                }
                if i == j {
                    return Err(Error::parse(at, "loop edge"));
                }
                let mut m = 3;
                if self.peek() == Some(b':') {
                    self.pos += 1;
                    self.ws();
                    let mpos = self.pos;
                    if self.s[self.pos..].starts_with(b"inf") {
                        self.pos += 3;
                        m = INF;
                    } else {
                        let v = self.int()?;
                        m = u32::try_from(v).map_err(|_| Error::parse(mpos, "bad multiplicity"))?;
                        check_mult(m).map_err(|_| {
                            Error::parse(mpos, format!("multiplicity {v} not in {{2,3,4,6,inf}}"))
                        })?;
                    }
                }
                match self.peek() {
                    Some(b'>') => {
                        self.pos += 1;
                        orient.push((at, j - 1, i - 1, m));
                    }
                    Some(b'<') => {
                        self.pos += 1;
                        orient.push((at, i - 1, j - 1, m));
                    }
                    _ => {}
                }
                if m != 2 {
                    edges.push((i - 1, j - 1, m));
                }
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    _ => break,
                }
            }
        }
        self.eat("}")?;
        self.ws();
        if self.pos != self.s.len() {
            return Err(Error::parse(self.pos, "trailing input"));
        }
        let mut g = CoxeterGraph::with_default_labels(n, &edges)?;
        for (at, short, long, m) in orient {
            if m != 4 && m != 6 {
                return Err(Error::parse(at, "orientation only allowed on 4- and 6-edges"));
            }
            g = g.orient(short, long)?;
        }
        Ok(g)
    }
}

/// Induced graph on `keep` (sorted, deduplicated) with original labels.
pub fn full_subgraph(g: &CoxeterGraph, keep: &[usize]) -> Result<CoxeterGraph> {
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&v) = keep.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    let labels = keep.iter().map(|&v| g.labels[v].clone()).collect();
    let mut edges = Vec::new();
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate().skip(a + 1) {
            let m = g.mult(i, j);
            if m != 2 {
                edges.push((a, b, m));
            }
        }
    }
    let mut h = CoxeterGraph::new(labels, &edges)?;
    for &(s, l) in &g.short_long {
        if let (Some(a), Some(b)) = (keep.iter().position(|&v| v == s), keep.iter().position(|&v| v == l)) {
            h = h.orient(a, b)?;
        }
    }
    Ok(h)
}

/// All vertices except those in `drop`.
pub fn complement(g: &CoxeterGraph, drop: &[usize]) -> Vec<usize> {
    (0..g.vertex_count()).filter(|v| !drop.contains(v)).collect()
}

fn signature(g: &CoxeterGraph, v: usize) -> Vec<u32> {
    let mut s: Vec<u32> = g.neighbors(v).iter().map(|&w| g.mult(v, w)).collect();
    s.sort_unstable();
    s
}

/// Multiplicity-preserving bijections `g → h` (`perm[i]` = image of `i`).
/// With `oriented`, short/long orientations must correspond too.
fn isomorphisms(g: &CoxeterGraph, h: &CoxeterGraph, oriented: bool, first_only: bool) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    if n != h.vertex_count() {
        return Vec::new();
    }
    let sg: Vec<Vec<u32>> = (0..n).map(|v| signature(g, v)).collect();
    let sh: Vec<Vec<u32>> = (0..n).map(|v| signature(h, v)).collect();
    let mut a = sg.clone();
    let mut b = sh.clone();
    a.sort();
    b.sort();
    if a != b {
        return Vec::new();
    }
    // Visit vertices so that each (after the first of its component) has an
    // already-placed neighbour.
    let mut order = Vec::with_capacity(n);
    for comp in g.components() {
        let start = order.len();
        order.push(comp[0]);
        let mut k = start;
        while k < order.len() {
            let v = order[k];
            k += 1;
            for w in g.neighbors(v) {
                if !order.contains(&w) {
                    order.push(w);
                }
            }
        }
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    fn rec(
        depth: usize,
        order: &[usize],
        g: &CoxeterGraph,
        h: &CoxeterGraph,
        sg: &[Vec<u32>],
        sh: &[Vec<u32>],
        oriented: bool,
        first_only: bool,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if first_only && !out.is_empty() {
            return;
        }
        if depth == order.len() {
            out.push(perm.clone());
            return;
        }
        let v = order[depth];
        for c in 0..h.vertex_count() {
            if used[c] || sg[v] != sh[c] {
                continue;
            }
            let ok = order[..depth].iter().all(|&u| {
                let pu = perm[u];
                g.mult(u, v) == h.mult(pu, c)
                    && (!oriented
                        || (g.short_long.contains(&(u, v)) == h.short_long.contains(&(pu, c))
                            && g.short_long.contains(&(v, u)) == h.short_long.contains(&(c, pu))))
            });
            if !ok {
                continue;
            }
            perm[v] = c;
            used[c] = true;
            rec(depth + 1, order, g, h, sg, sh, oriented, first_only, perm, used, out);
            used[c] = false;
            perm[v] = usize::MAX;
        }
    }
    rec(0, &order, g, h, &sg, &sh, oriented, first_only, &mut perm, &mut used, &mut out);
    out
}

/// Full multiplicity-preserving automorphism group, sorted.
///
/// When the graph is oriented the orientation is preserved as well.
pub fn automorphisms(g: &CoxeterGraph) -> Vec<GraphAutomorphism> {
    let mut all: Vec<GraphAutomorphism> = isomorphisms(g, g, g.is_oriented(), false)
        .into_iter()
        .map(|perm| GraphAutomorphism { perm })
        .collect();
    all.sort();
    all
}

/// An isomorphism `g → h` if one exists.
pub fn find_isomorphism(g: &CoxeterGraph, h: &CoxeterGraph) -> Option<Vec<usize>> {
    let oriented = g.is_oriented() && h.is_oriented();
    isomorphisms(g, h, oriented, true).pop()
}

fn candidates(n: usize) -> Vec<DiagramType> {
    let mut out = Vec::new();
    for family in Family::ALL {
        if family.finite_rank_ok(n) {
            out.push(DiagramType::Finite { family, rank: n });
        }
    }
    if n >= 2 {
        for family in Family::ALL {
            if family.affine_rank_ok(n - 1) {
                out.push(DiagramType::Affine { family, rank: n - 1 });
            }
        }
    }
    out
}

fn catalogue_graph(t: &DiagramType) -> CoxeterGraph {
    match *t {
        DiagramType::Finite { family, rank } => builtin(family, rank, false).unwrap(),
        DiagramType::Affine { family, rank } => builtin(family, rank, true).unwrap(),
        _ => unreachable!(),
    }
}

fn classify_connected(g: &CoxeterGraph) -> DiagramType {
    let cands = candidates(g.vertex_count());
    let oriented = g.is_oriented() && !g.is_simply_laced();
    if oriented {
        for t in &cands {
            if !isomorphisms(g, &catalogue_graph(t), true, true).is_empty() {
                return t.clone();
            }
        }
    }
    for t in &cands {
        if !isomorphisms(g, &catalogue_graph(t), false, true).is_empty() {
            return t.clone();
        }
    }
    DiagramType::Indefinite
}

/// Catalogue type by exact isomorphism matching.
pub fn classify(g: &CoxeterGraph) -> DiagramType {
    let comps = g.components();
    if comps.len() == 1 {
        return classify_connected(g);
    }
    DiagramType::Reducible(
        comps.iter().map(|c| classify_connected(&full_subgraph(g, c).unwrap())).collect(),
    )
}

/// Affine completion of a connected finite diagram; the new vertex `"0"` is
/// placed at index 0 and attached according to the highest root.
pub fn affine_completion(g: &CoxeterGraph) -> Result<CoxeterGraph> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let t = classify(g);
    if !t.is_finite() {
        return Err(Error::NotFinite(t.to_string()));
    }
    if g.index_of("0").is_some() {
        return Err(Error::invalid("graph already has a vertex labelled 0"));
    }
    complete(g)
}

fn complete(g: &CoxeterGraph) -> Result<CoxeterGraph> {
    let a = g.cartan_matrix()?;
    let n = g.vertex_count();
    let d = weylrep::symmetrizer(&a)?;
    let theta = weylrep::highest_root(&a)?;
    // (θ, α_j) in the form with (α_i, α_j) = d_i a_ij.
    let th_a: Vec<i64> = (0..n).map(|j| (0..n).map(|k| theta[k] * d[k] * a[k][j]).sum()).collect();
    let th_th: i64 = (0..n).map(|j| theta[j] * th_a[j]).sum();
    let mut labels = vec!["0".to_string()];
    labels.extend(g.labels.iter().cloned());
    let mut edges: Vec<(usize, usize, u32)> =
        g.edges().into_iter().map(|(i, j, m)| (i + 1, j + 1, m)).collect();
    let mut orient = Vec::new();
    for j in 0..n {
        if th_a[j] == 0 {
            continue;
        }
        let a0j = -2 * th_a[j] / th_th;
        let aj0 = -th_a[j] / d[j];
        let m = match a0j * aj0 {
            1 => 3,
            2 => 4,
            3 => 6,
            4 => INF,
            p => return Err(Error::invalid(format!("unexpected Cartan product {p}"))),
        };
        edges.push((0, j + 1, m));
        if m == 4 || m == 6 {
            if a0j < aj0 {
                orient.push((0, j + 1));
            } else {
                orient.push((j + 1, 0));
            }
        }
    }
    let mut h = CoxeterGraph::new(labels, &edges)?;
    for &(s, l) in &g.short_long {
        h = h.orient(s + 1, l + 1)?;
    }
    for (s, l) in orient {
        h = h.orient(s, l)?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels_of(g: &CoxeterGraph, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| g.label(v).to_string()).collect()
    }

    #[test]
    fn parse_builtins() {
        let a2 = parse_graph("A2").unwrap();
        assert_eq!(a2.vertex_count(), 2);
        assert_eq!(a2.mult(0, 1), 3);

        let e7 = parse_graph("E7~").unwrap();
        assert_eq!(e7.vertex_count(), 8);
        let idx = |l: &str| e7.index_of(l).unwrap();
        for (x, y) in [("1", "3"), ("3", "4"), ("4", "5"), ("5", "6"), ("6", "7"), ("2", "4"), ("0", "1")] {
            assert_eq!(e7.mult(idx(x), idx(y)), 3, "{x}-{y}");
        }
        assert_eq!(e7.edges().len(), 7);
        assert!(parse_graph("E9").is_err());
        assert!(parse_graph("C2").is_err());
        assert!(parse_graph("B2~").is_err());
        assert!(parse_graph("C2~").is_ok());
        assert!(matches!(parse_graph("Q3"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn parse_custom() {
        let g = parse_graph("graph { n=3; edges: 1-2, 2-3, 1-3 }").unwrap();
        assert_eq!(g.edges().len(), 3);
        assert_eq!(classify(&g), DiagramType::Affine { family: Family::A, rank: 2 });
        let b = parse_graph("graph { n=3; edges: 1-2, 2-3:4> }").unwrap();
        assert_eq!(b.cartan_entry(2, 1), Some(-2));
        assert_eq!(b.cartan_entry(1, 2), Some(-1));
        assert_eq!(classify(&b), DiagramType::Finite { family: Family::B, rank: 3 });
        let c = parse_graph("graph { n=3; edges: 1-2, 2-3:4< }").unwrap();
        assert_eq!(classify(&c), DiagramType::Finite { family: Family::C, rank: 3 });
        let inf = parse_graph("graph { n=2; edges: 1-2:inf }").unwrap();
        assert_eq!(inf.mult(0, 1), INF);
        match parse_graph("graph { n=2; edges: 1-2:5 }") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 24),
            other => panic!("{other:?}"),
        }
        assert!(parse_graph("graph { n=2; edges: 1-3 }").is_err());
        assert!(parse_graph("graph { n=2; edges: 1-2 } x").is_err());
    }

    #[test]
    fn classify_examples() {
        let path4 = CoxeterGraph::with_default_labels(4, &chain(4)).unwrap();
        assert_eq!(classify(&path4), DiagramType::Finite { family: Family::A, rank: 4 });
        let star = CoxeterGraph::with_default_labels(5, &[(0, 1, 3), (0, 2, 3), (0, 3, 3), (0, 4, 3)]).unwrap();
        assert_eq!(classify(&star), DiagramType::Affine { family: Family::D, rank: 4 });
        let a1a1 = CoxeterGraph::with_default_labels(2, &[]).unwrap();
        assert_eq!(a1a1.to_string_type(), "A1+A1");
        let a1t = parse_graph("A1~").unwrap();
        assert_eq!(a1t.mult(0, 1), INF);
        assert_eq!(classify(&a1t), DiagramType::Affine { family: Family::A, rank: 1 });
        assert_eq!(classify(&parse_graph("E7~").unwrap()).describe(), "Affine E7");
    }

    impl CoxeterGraph {
        fn to_string_type(&self) -> String {
            classify(self).to_string()
        }
    }

    #[test]
    fn subgraphs_of_e7_tilde() {
        let g = parse_graph("E7~").unwrap();
        let i = |l: &str| g.index_of(l).unwrap();
        let e7 = full_subgraph(&g, &complement(&g, &[i("0")])).unwrap();
        assert_eq!(e7.to_string_type(), "E7");
        let a7 = full_subgraph(&g, &complement(&g, &[i("2")])).unwrap();
        assert_eq!(a7.to_string_type(), "A7");
        let e6 = full_subgraph(&g, &complement(&g, &[i("0"), i("7")])).unwrap();
        assert_eq!(e6.to_string_type(), "E6");
        assert_eq!(labels_of(&g, &complement(&g, &[i("0"), i("7")])), ["1", "2", "3", "4", "5", "6"]);
        assert_eq!(full_subgraph(&g, &[]), Err(Error::EmptySubset));
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphisms(&parse_graph("A2~").unwrap()).len(), 6);
        let e7 = parse_graph("E7~").unwrap();
        let auts = automorphisms(&e7);
        assert_eq!(auts.len(), 2);
        let flip = auts.iter().find(|a| !a.is_identity()).unwrap();
        for l in ["2", "4"] {
            let v = e7.index_of(l).unwrap();
            assert_eq!(flip.apply(v), v);
        }
        assert_eq!(automorphisms(&parse_graph("A1").unwrap()).len(), 1);
        assert_eq!(automorphisms(&parse_graph("D4").unwrap()).len(), 6);
        assert_eq!(automorphisms(&parse_graph("D4~").unwrap()).len(), 24);
        assert_eq!(automorphisms(&parse_graph("F4").unwrap()).len(), 1);
    }

    #[test]
    fn completions() {
        let a2 = affine_completion(&parse_graph("A2").unwrap()).unwrap();
        assert_eq!(a2.edges().len(), 3);
        let e6 = affine_completion(&parse_graph("E6").unwrap()).unwrap();
        assert_eq!(e6.neighbors(0), vec![e6.index_of("2").unwrap()]);
        let d4 = affine_completion(&parse_graph("D4").unwrap()).unwrap();
        assert_eq!(d4.neighbors(0), vec![d4.index_of("2").unwrap()]);
        let b3 = affine_completion(&parse_graph("B3").unwrap()).unwrap();
        assert_eq!(b3.neighbors(0), vec![b3.index_of("2").unwrap()]);
        let c3 = affine_completion(&parse_graph("C3").unwrap()).unwrap();
        assert_eq!(c3.mult(0, 1), 4);
        let g2 = affine_completion(&parse_graph("G2").unwrap()).unwrap();
        assert_eq!(g2.neighbors(0), vec![g2.index_of("2").unwrap()]);
        let f4 = affine_completion(&parse_graph("F4").unwrap()).unwrap();
        assert_eq!(f4.neighbors(0), vec![f4.index_of("1").unwrap()]);
        assert!(affine_completion(&parse_graph("A2~").unwrap()).is_err());
        let two = CoxeterGraph::with_default_labels(2, &[]).unwrap();
        assert_eq!(affine_completion(&two), Err(Error::Disconnected));
    }
}
