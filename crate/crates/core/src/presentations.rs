//! Group presentations: Artin and Coxeter presentations, the semidirect
//! product `SArt = Art ⋊ S(Γ)`, reduced Artin groups and their extension
//! quotients, plus coset enumeration and abelianization.

mod coset;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use coset::{coset_enumerate, EnumerationResult, Outcome, DEFAULT_MAX_COSETS};

use crate::affine::{realize, AffineMap, AffineRealization, SpecialStructure};
use crate::garside::{delta_on, expand_delta_macro, split_exponent, split_terms, ArtinWord};
use crate::graphs::{builtin, complement, CoxeterGraph, Family, GraphAutomorphism, INF};
use crate::lattice::{smith_form, Q};
use crate::{Error, Result};

/// Letters `(generator index, ±1)`.
pub type Word = Vec<(usize, i8)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    /// A relation `u = v` is stored as `u v^-1`.
    pub relators: Vec<Word>,
}

fn inverse(w: &[(usize, i8)]) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

fn power(w: &[(usize, i8)], k: i64) -> Word {
    let base = if k < 0 { inverse(w) } else { w.to_vec() };
    (0..k.unsigned_abs()).flat_map(|_| base.iter().copied()).collect()
}

impl Presentation {
    pub fn new(generators: Vec<String>) -> Self {
        Presentation { generators, relators: Vec::new() }
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn add_generator(&mut self, name: impl Into<String>) -> usize {
        self.generators.push(name.into());
        self.generators.len() - 1
    }

    pub fn push(&mut self, w: Word) {
        self.relators.push(w);
    }

    /// Adds `u = v`.
    pub fn push_relation(&mut self, u: &[(usize, i8)], v: &[(usize, i8)]) {
        let mut w = u.to_vec();
        w.extend(inverse(v));
        self.relators.push(w);
    }

    /// Generator names with their run-length compressed exponents.
    pub fn word_to_string(&self, w: &[(usize, i8)]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut terms = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let (g, e) = w[i];
            let mut k = 0i64;
            while i < w.len() && w[i] == (g, e) {
                k += i64::from(e);
                i += 1;
            }
            let name = &self.generators[g];
            terms.push(if k == 1 { name.clone() } else { format!("{name}^{k}") });
        }
        terms.join(" ")
    }

    pub fn to_text(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_to_string(r)).collect();
        format!("gens: {} ;\nrels: {} ;\n", self.generators.join(" "), rels.join(" ,\n      "))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let relators: Vec<Vec<(String, i64)>> = self
            .relators
            .iter()
            .map(|r| r.iter().map(|&(g, e)| (self.generators[g].clone(), i64::from(e))).collect())
            .collect();
        serde_json::to_value(PresentationJson { generators: self.generators.clone(), relators }).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let pj: PresentationJson =
            serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))?;
        let mut p = Presentation::new(pj.generators);
        for r in pj.relators {
            let mut w = Word::new();
            for (name, e) in r {
                let g = p.generator(&name).ok_or_else(|| Error::invalid(format!("unknown generator `{name}`")))?;
                w.extend(power(&[(g, 1)], e));
            }
            p.push(w);
        }
        Ok(p)
    }

    /// Image of a word over the vertices of `g` (generator `t<label>`).
    pub fn artin_word(&self, g: &CoxeterGraph, w: &ArtinWord) -> Result<Word> {
        w.letters
            .iter()
            .map(|&(v, e)| {
                let name = format!("t{}", g.label(v));
                self.generator(&name).map(|i| (i, e)).ok_or_else(|| Error::invalid(format!("no generator `{name}`")))
            })
            .collect()
    }

    /// Parses a word such as `t0 t1^-1 D(E6)^2 g(0,7)`; `D` macros need `graph`.
    pub fn parse_word(&self, text: &str, graph: Option<&CoxeterGraph>) -> Result<Word> {
        let mut out = Word::new();
        for (pos, term) in split_terms(text)? {
            if term == "1" {
                continue;
            }
            let (name, k) = split_exponent(term).map_err(|m| Error::parse(pos, m))?;
            let base = if let Some(i) = self.generator(name) {
                vec![(i, 1)]
            } else if let Some(d) = graph.and_then(|g| expand_delta_macro(g, name).map(|d| (g, d))) {
                let (g, d) = d;
                self.artin_word(g, &d?)?
            } else {
                return Err(Error::parse(pos, format!("unknown term `{term}`")));
            };
            out.extend(power(&base, k));
        }
        Ok(out)
    }

    /// Parses `gens: a b ; rels: w , u = v ;`.
    pub fn from_text(text: &str, graph: Option<&CoxeterGraph>) -> Result<Self> {
        let sections = split_top(text, ';');
        let mut p: Option<Presentation> = None;
        let mut rels_src: Option<(usize, &str)> = None;
        for (pos, sec) in sections {
            let s = sec.trim();
            if s.is_empty() {
                continue;
            }
            if let Some(rest) = s.strip_prefix("gens:") {
                let gens = split_terms(rest)?.into_iter().map(|(_, t)| t.to_string()).collect();
                p = Some(Presentation::new(gens));
            } else if let Some(rest) = s.strip_prefix("rels:") {
                rels_src = Some((pos + sec.find("rels:").unwrap() + 5, rest));
            } else {
                return Err(Error::parse(pos, "expected `gens:` or `rels:`"));
            }
        }
        let mut p = p.ok_or_else(|| Error::parse(0, "missing `gens:` section"))?;
        if let Some((base, src)) = rels_src {
            for (pos, rel) in split_top(src, ',') {
                if rel.trim().is_empty() {
                    continue;
                }
                let sides: Vec<(usize, &str)> = split_top(rel, '=');
                let at = |e: Error, off: usize| match e {
                    Error::Parse { pos: q, msg } => Error::parse(base + pos + off + q, msg),
                    e => e,
                };
                match sides.as_slice() {
                    [(o, u)] => {
                        let w = p.parse_word(u, graph).map_err(|e| at(e, *o))?;
                        p.push(w);
                    }
                    [(o1, u), (o2, v)] => {
                        let u = p.parse_word(u, graph).map_err(|e| at(e, *o1))?;
                        let v = p.parse_word(v, graph).map_err(|e| at(e, *o2))?;
                        p.push_relation(&u, &v);
                    }
                    _ => return Err(Error::parse(base + pos, "more than one `=` in a relation")),
                }
            }
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<Vec<(String, i64)>>,
}

/// Splits on `sep` outside brackets, returning `(offset, piece)`.
fn split_top(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

/// Generators `t<label>` and one braid relator per finite multiplicity.
pub fn artin_presentation(g: &CoxeterGraph) -> Presentation {
    let n = g.vertex_count();
    let mut p = Presentation::new(g.labels().iter().map(|l| format!("t{l}")).collect());
    for i in 0..n {
        for j in i + 1..n {
            let m = g.mult(i, j);
            if m == INF {
                continue;
            }
            let alt = |a: usize, b: usize| -> Word { (0..m).map(|k| (if k % 2 == 0 { a } else { b }, 1)).collect() };
            p.push_relation(&alt(i, j), &alt(j, i));
        }
    }
    p
}

/// Adds `x^2` for every generator whose name starts with `t`.
pub fn coxeter_quotient(p: &Presentation) -> Presentation {
    let mut q = p.clone();
    for (i, name) in p.generators.iter().enumerate() {
        if name.starts_with('t') {
            q.push(vec![(i, 1), (i, 1)]);
        }
    }
    q
}

/// `SArt` together with the data used to build it.
#[derive(Clone, Debug)]
pub struct SArt {
    pub presentation: Presentation,
    pub realization: AffineRealization,
    pub structure: SpecialStructure,
    /// Generator index of each non-identity element of `S(Γ)`.
    pub s_generators: BTreeMap<GraphAutomorphism, usize>,
}

impl SArt {
    /// The one-letter word of an element of `S(Γ)`; empty for the identity.
    pub fn element_word(&self, a: &GraphAutomorphism) -> Word {
        self.s_generators.get(a).map(|&i| vec![(i, 1)]).unwrap_or_default()
    }

    fn delta_word(&self, drop: &[usize]) -> Result<Word> {
        let g = &self.realization.graph;
        let keep = complement(g, drop);
        self.presentation.artin_word(g, &delta_on(g, &keep)?)
    }

    /// `Δ_{Γ_j} g_j` for any vertex whose point reflection lies in `SW`.
    pub fn blowup_relator(&self, j: usize) -> Result<Word> {
        let gj = self
            .realization
            .g_vertex(j)?
            .ok_or_else(|| Error::invalid(format!("vertex {} is not a blowup candidate", self.realization.label(j))))?;
        let mut w = self.delta_word(&[j])?;
        w.extend(self.element_word(&gj));
        Ok(w)
    }

    /// `Δ_{ij} g_{ij}` for a pair of special vertices, `i < j`.
    pub fn pair_relator(&self, i: usize, j: usize) -> Result<Word> {
        let gij = self
            .structure
            .g_ij
            .get(&(i, j))
            .ok_or_else(|| Error::invalid("not a minuscule pair".to_string()))?;
        let mut w = self.delta_word(&[i, j])?;
        w.extend(self.element_word(gij));
        Ok(w)
    }

    /// Image of every generator as an affine map: `t_i ↦ s_i` and each
    /// element of `S(Γ)` to its action on the alcove.
    pub fn affine_images(&self) -> Vec<AffineMap> {
        let r = &self.realization;
        let mut out: Vec<AffineMap> = r.reflections.clone();
        let mut by_index: Vec<(&usize, &GraphAutomorphism)> = self.s_generators.iter().map(|(a, i)| (i, a)).collect();
        by_index.sort();
        out.extend(by_index.into_iter().map(|(_, a)| r.affine_action(a)));
        out
    }

    /// Evaluates `w` under [`SArt::affine_images`].
    pub fn evaluate(&self, images: &[AffineMap], w: &[(usize, i8)]) -> AffineMap {
        let dim = self.realization.dim();
        let inv: Vec<AffineMap> = images.iter().map(invert_affine).collect();
        w.iter().fold(AffineMap::identity(dim), |acc, &(g, e)| {
            acc.compose(if e > 0 { &images[g] } else { &inv[g] })
        })
    }
}

fn invert_affine(m: &AffineMap) -> AffineMap {
    let l = m.dim();
    let mut a: Vec<Vec<Q>> = m.linear.clone();
    let mut inv = AffineMap::identity(l).linear;
    for col in 0..l {
        let p = (col..l).find(|&r| a[r][col] != Q::from_integer(0)).expect("singular linear part");
        a.swap(col, p);
        inv.swap(col, p);
        let d = a[col][col];
        for j in 0..l {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..l {
            if r != col {
                let f = a[r][col];
                for j in 0..l {
                    let (x, y) = (a[col][j] * f, inv[col][j] * f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    let translation = (0..l).map(|r| -(0..l).fold(Q::from_integer(0), |s, k| s + inv[r][k] * m.translation[k])).collect();
    AffineMap { linear: inv, translation }
}

/// Name of an element of `S(Γ)`: `g(i)`, `g(i,j)` when it is one of the
/// defining involutions, otherwise the list of vertex images.
fn element_names(r: &AffineRealization, st: &SpecialStructure) -> BTreeMap<GraphAutomorphism, String> {
    let mut names = BTreeMap::new();
    for (&i, a) in &st.g_i {
        if !a.is_identity() {
            names.entry(a.clone()).or_insert_with(|| format!("g({})", r.label(i)));
        }
    }
    for (&(i, j), a) in &st.g_ij {
        if !a.is_identity() {
            names.entry(a.clone()).or_insert_with(|| format!("g({},{})", r.label(i), r.label(j)));
        }
    }
    for a in &st.s_gamma {
        if !a.is_identity() {
            names.entry(a.clone()).or_insert_with(|| {
                let imgs: Vec<&str> = a.perm.iter().map(|&k| r.label(k)).collect();
                format!("g[{}]", imgs.join(","))
            });
        }
    }
    names
}

pub fn sart(g: &CoxeterGraph) -> Result<SArt> {
    let realization = realize(g)?;
    let structure = realization.special_structure()?;
    let mut p = artin_presentation(g);
    let names = element_names(&realization, &structure);
    let mut s_generators = BTreeMap::new();
    // Generators in the order g(i), g(i,j), then the rest.
    let mut ordered: Vec<(&GraphAutomorphism, &String)> = names.iter().collect();
    ordered.sort_by_key(|(_, n)| (n.starts_with("g["), n.contains(','), (*n).clone()));
    let rank = |n: &str| -> Vec<usize> {
        n.trim_start_matches("g(")
            .trim_end_matches(')')
            .split(',')
            .map(|l| realization.graph.index_of(l).unwrap_or(usize::MAX))
            .collect()
    };
    ordered.sort_by_key(|(_, n)| (n.starts_with("g["), n.contains(','), if n.starts_with("g[") { vec![] } else { rank(n) }, (*n).clone()));
    for (a, name) in ordered {
        s_generators.insert(a.clone(), p.add_generator(name.clone()));
    }
    let word = |a: &GraphAutomorphism| -> Word { s_generators.get(a).map(|&i| vec![(i, 1)]).unwrap_or_default() };
    let elems: Vec<&GraphAutomorphism> = structure.s_gamma.iter().filter(|a| !a.is_identity()).collect();
    let mut by_gen: Vec<(usize, &GraphAutomorphism)> = elems.iter().map(|a| (s_generators[*a], *a)).collect();
    by_gen.sort();
    for &(_, a) in &by_gen {
        for &(_, b) in &by_gen {
            let mut w = word(a);
            w.extend(word(b));
            w.extend(inverse(&word(&a.compose(b))));
            p.push(w);
        }
    }
    for &(ga, a) in &by_gen {
        for i in 0..g.vertex_count() {
            p.push(vec![(ga, 1), (i, 1), (ga, -1), (a.apply(i), -1)]);
        }
    }
    Ok(SArt { presentation: p, realization, structure, s_generators })
}

pub fn sart_presentation(g: &CoxeterGraph) -> Result<Presentation> {
    Ok(sart(g)?.presentation)
}

/// `SArt` with `Δ_i g_i` for every special `i` and `Δ_{ij} g_{ij}` for every
/// minuscule pair.
pub fn reduced_artin(g: &CoxeterGraph) -> Result<SArt> {
    let mut s = sart(g)?;
    let mut extra = Vec::new();
    for &i in &s.structure.special {
        extra.push(s.blowup_relator(i)?);
    }
    for &(i, j) in &s.structure.minuscule_pairs {
        extra.push(s.pair_relator(i, j)?);
    }
    s.presentation.relators.extend(extra);
    Ok(s)
}

pub fn reduced_artin_presentation(g: &CoxeterGraph) -> Result<Presentation> {
    Ok(reduced_artin(g)?.presentation)
}

/// `SArt` with the blowup relators `Δ_{Γ_j} g_j` followed by the toric
/// relators of the given minuscule pairs.
///
/// A toric pair `{i, j}` imposes `Δ_{ij} g_{ij} (Δ_i g_i)^-1`; when either
/// endpoint is also blown up this is replaced by the equivalent `Δ_{ij} g_{ij}`.
pub fn extension_quotient(g: &CoxeterGraph, toric: &[(usize, usize)], blowup: &[usize]) -> Result<Presentation> {
    let s = sart(g)?;
    let special = &s.structure.special;
    let mut blow: Vec<usize> = blowup.to_vec();
    blow.sort_by_key(|j| (!special.contains(j), *j));
    blow.dedup();
    let mut extra = Vec::new();
    for &j in &blow {
        extra.push(s.blowup_relator(j)?);
    }
    let mut pairs: Vec<(usize, usize)> = toric.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    for (i, j) in pairs {
        if !s.structure.minuscule_pairs.contains(&(i, j)) {
            return Err(Error::invalid(format!(
                "{{{}, {}}} is not a minuscule pair",
                s.realization.label(i),
                s.realization.label(j)
            )));
        }
        let mut w = s.pair_relator(i, j)?;
        if !blow.contains(&i) && !blow.contains(&j) {
            w.extend(inverse(&s.blowup_relator(i)?));
        }
        extra.push(w);
    }
    let mut p = s.presentation;
    p.relators.extend(extra);
    Ok(p)
}

pub const THEOREMS: [&str; 7] = ["dp5", "dp4", "dp3", "quartic", "genus3-universal", "mcg-3-1", "dp1"];

/// The affine graph underlying a named theorem presentation.
pub fn theorem_graph(name: &str) -> Result<CoxeterGraph> {
    let (family, rank) = match name {
        "dp5" => (Family::A, 4),
        "dp4" => (Family::D, 5),
        "dp3" => (Family::E, 6),
        "quartic" | "genus3-universal" | "mcg-3-1" => (Family::E, 7),
        "dp1" => (Family::E, 8),
        _ => return Err(Error::invalid(format!("unknown theorem presentation `{name}`"))),
    };
    builtin(family, rank, true)
}

/// Vertex sets of `E7`, `E6` and `A7` inside the labelled `Ê_7`.
fn e7_subgraphs(g: &CoxeterGraph) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let idx = |labels: &[&str]| -> Vec<usize> { labels.iter().map(|l| g.index_of(l).unwrap()).collect() };
    (
        idx(&["1", "2", "3", "4", "5", "6", "7"]),
        idx(&["1", "2", "3", "4", "5", "6"]),
        idx(&["0", "1", "3", "4", "5", "6", "7"]),
    )
}

pub fn theorem_presentation(name: &str) -> Result<Presentation> {
    let g = theorem_graph(name)?;
    match name {
        "dp5" | "dp4" | "dp3" | "dp1" => reduced_artin_presentation(&g),
        "genus3-universal" => {
            let mut p = reduced_artin_presentation(&g)?;
            let (_, e6, a7) = e7_subgraphs(&g);
            let (d_e6, d_a7) = (p.artin_word(&g, &delta_on(&g, &e6)?)?, p.artin_word(&g, &delta_on(&g, &a7)?)?);
            p.push_relation(&d_a7, &d_e6);
            Ok(p)
        }
        _ => {
            let mut p = artin_presentation(&g);
            let (e7, e6, a7) = e7_subgraphs(&g);
            let d_e7 = p.artin_word(&g, &delta_on(&g, &e7)?)?;
            let d_e6 = p.artin_word(&g, &delta_on(&g, &e6)?)?;
            let d_a7 = p.artin_word(&g, &delta_on(&g, &a7)?)?;
            let (t0, t7) = (p.generator("t0").unwrap(), p.generator("t7").unwrap());
            if name == "quartic" {
                p.push(d_e7);
                let mut lhs = vec![(t0, 1)];
                lhs.extend(&d_e6);
                let mut rhs = d_e6.clone();
                rhs.push((t7, 1));
                p.push_relation(&lhs, &rhs);
                p.push(power(&d_e6, 2));
            } else {
                p.push_relation(&d_e7, &power(&d_e6, 2));
                p.push_relation(&d_a7, &d_e6);
            }
            Ok(p)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|t| match i64::try_from(t) {
                Ok(x) => serde_json::json!(x),
                Err(_) => serde_json::json!(t.to_string()),
            })
            .collect();
        serde_json::json!({ "free_rank": self.free_rank, "torsion": torsion })
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Smith normal form of the exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let n = p.generators.len();
    let rows: Vec<Vec<BigInt>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i64; n];
            for &(g, e) in r {
                row[g] += i64::from(e);
            }
            row.into_iter().map(BigInt::from).collect()
        })
        .filter(|row: &Vec<BigInt>| row.iter().any(|x| x != &BigInt::from(0)))
        .collect();
    let snf = smith_form(&rows);
    AbelianInvariants { free_rank: n - snf.rank(), torsion: snf.torsion() }
}

/// Evaluates every relator of `p` under `s` and reports whether it is
/// `x ↦ ±x + p` with `p` in the coweight lattice.
pub fn homomorphism_check(s: &SArt, p: &Presentation) -> Vec<(String, bool)> {
    let images = s.affine_images();
    p.relators
        .iter()
        .map(|r| {
            let m = s.evaluate(&images, r);
            let ok = m.linear_is_scalar_sign() && m.translation.iter().all(|x| x.is_integer());
            (p.word_to_string(r), ok)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::parse_graph;

    fn g(name: &str) -> CoxeterGraph {
        parse_graph(name).unwrap()
    }

    fn order(p: &Presentation, max: usize) -> Option<u64> {
        coset_enumerate(p, &[], max).order()
    }

    #[test]
    fn artin_examples() {
        let p = artin_presentation(&g("A2"));
        assert_eq!(p.to_text(), "gens: t1 t2 ;\nrels: t1 t2 t1 t2^-1 t1^-1 t2^-1 ;\n");
        let p = artin_presentation(&g("A1~"));
        assert!(p.relators.is_empty());
        let p = artin_presentation(&CoxeterGraph::with_default_labels(2, &[]).unwrap());
        assert_eq!(p.word_to_string(&p.relators[0]), "t1 t2 t1^-1 t2^-1");
    }

    #[test]
    fn enumeration_basics() {
        assert_eq!(order(&coxeter_quotient(&artin_presentation(&g("A2"))), 1000), Some(6));
        assert_eq!(order(&coxeter_quotient(&artin_presentation(&g("A4"))), 10_000), Some(120));
        assert_eq!(order(&coxeter_quotient(&artin_presentation(&g("B3"))), 10_000), Some(48));
        assert_eq!(order(&coxeter_quotient(&artin_presentation(&g("A2~"))), 5000), None);
        let cyc = Presentation::from_text("gens: a ; rels: a^5 ;", None).unwrap();
        assert_eq!(order(&cyc, 100), Some(5));
        let triv = Presentation::from_text("gens: a b ; rels: a , b ;", None).unwrap();
        assert_eq!(order(&triv, 100), Some(1));
        let s3 = coxeter_quotient(&artin_presentation(&g("A2")));
        let r = coset_enumerate(&s3, &[vec![(0, 1)]], 100);
        assert_eq!(r.order(), Some(3));
    }

    #[test]
    fn text_roundtrip() {
        let e7 = g("E7~");
        let p = Presentation::from_text("gens: t0 t1 t2 t3 t4 t5 t6 t7 ; rels: D(E6) = t1 , t2^-2 t3 1 ;", Some(&e7)).unwrap();
        assert_eq!(p.relators[0].len(), 37);
        assert_eq!(p.relators[1], vec![(2, -1), (2, -1), (3, 1)]);
        let back = Presentation::from_text(&p.to_text(), None).unwrap();
        assert_eq!(back, p);
        let j = Presentation::from_json(&p.to_json().to_string()).unwrap();
        assert_eq!(j, p);
        let err = Presentation::from_text("gens: a ; rels: a b ;", None).unwrap_err();
        assert_eq!(err, Error::parse(18, "unknown term `b`"));
    }

    #[test]
    fn sart_examples() {
        let p = sart_presentation(&g("A2~")).unwrap();
        assert_eq!(p.generators.len(), 8);
        assert_eq!(&p.generators[3..6], ["g(0)", "g(1)", "g(2)"]);
        let p = sart_presentation(&g("E7~")).unwrap();
        assert_eq!(p.generators[8..], ["g(0,7)"]);
        let p = sart_presentation(&g("E8~")).unwrap();
        assert_eq!(p, artin_presentation(&g("E8~")));
        assert!(sart_presentation(&g("E7")).is_err());
    }

    #[test]
    fn reduced_small_orders() {
        for (l, n) in [(2, 6), (3, 24)] {
            let p = reduced_artin_presentation(&g(&format!("A{l}~"))).unwrap();
            assert_eq!(order(&p, 200_000), Some(n), "A{l}~");
        }
    }

    #[test]
    fn abelianization_examples() {
        let a = abelianization(&Presentation::from_text("gens: a ; rels: a^3 ;", None).unwrap());
        assert_eq!((a.free_rank, a.torsion.clone()), (0, vec![BigInt::from(3)]));
        assert_eq!(a.to_string(), "Z/3");
        let a = abelianization(&artin_presentation(&g("E7~")));
        assert_eq!((a.free_rank, a.torsion.len()), (1, 0));
        assert!(abelianization(&theorem_presentation("mcg-3-1").unwrap()).is_trivial());
        let free = abelianization(&artin_presentation(&g("A1~")));
        assert_eq!(free.to_string(), "Z^2");
    }

    #[test]
    fn extension_bookkeeping() {
        let e6 = g("E6~");
        let s = sart(&e6).unwrap();
        let sp = s.structure.special.clone();
        let pairs = s.structure.minuscule_pairs.clone();
        assert_eq!(extension_quotient(&e6, &pairs, &sp).unwrap(), reduced_artin_presentation(&e6).unwrap());
        let e7 = g("E7~");
        assert_eq!(extension_quotient(&e7, &[], &[]).unwrap(), sart_presentation(&e7).unwrap());
        let red = reduced_artin_presentation(&e7).unwrap();
        let ext = extension_quotient(&e7, &[(0, 7)], &[0, 7, 2]).unwrap();
        let extra: Vec<&Word> = ext.relators.iter().filter(|r| !red.relators.contains(r)).collect();
        assert_eq!(extra.len(), 1);
        assert_eq!(extra[0].len(), 29);
        assert!(red.relators.iter().all(|r| ext.relators.contains(r)));
        assert!(extension_quotient(&e7, &[], &[3]).is_err());
        let toric_only = extension_quotient(&e6, &pairs[..1], &[]).unwrap();
        assert_eq!(toric_only.relators.len(), sart_presentation(&e6).unwrap().relators.len() + 1);
    }

    #[test]
    fn reduced_relators_map_to_lattice() {
        for name in ["A2~", "A3~", "D4~", "D5~", "E6~", "E7~", "C3~"] {
            let s = reduced_artin(&g(name)).unwrap();
            for (w, ok) in homomorphism_check(&s, &s.presentation) {
                assert!(ok, "{name}: {w}");
            }
        }
    }

    #[test]
    fn theorem_shapes() {
        for name in THEOREMS {
            let p = theorem_presentation(name).unwrap();
            assert!(p.relators.iter().flatten().all(|&(i, _)| i < p.generators.len()));
        }
        assert_eq!(theorem_presentation("dp5").unwrap(), reduced_artin_presentation(&g("A4~")).unwrap());
        let m = theorem_presentation("mcg-3-1").unwrap();
        assert_eq!(m.generators.len(), 8);
        let n = m.relators.len();
        assert_eq!((m.relators[n - 2].len(), m.relators[n - 1].len()), (63 + 72, 28 + 36));
        let q = theorem_presentation("quartic").unwrap();
        let n = q.relators.len();
        assert_eq!((q.relators[n - 3].len(), q.relators[n - 2].len(), q.relators[n - 1].len()), (63, 74, 72));
        assert!(theorem_presentation("dp2").is_err());
    }
}
