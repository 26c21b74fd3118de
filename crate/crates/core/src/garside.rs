//! Artin words, Garside elements and the left-greedy normal form of
//! finite-type Artin groups.
//!
//! Simple elements are Weyl group elements stored as matrices together with
//! their inverses, so left and right descent sets are sign tests on columns.

use std::fmt;

use crate::graphs::{classify, full_subgraph, CoxeterGraph};
use crate::weylrep::{is_negative, reflection_rep, CartanData, GroupElement, IntMatrix, ORDER_CAP};
use crate::{Error, Result};

/// A word in the generators `t_i` of an Artin group; letters are
/// `(vertex index, ±1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArtinWord {
    pub letters: Vec<(usize, i8)>,
}

impl ArtinWord {
    pub fn new(letters: Vec<(usize, i8)>) -> Self {
        ArtinWord { letters }
    }

    pub fn positive(indices: &[usize]) -> Self {
        ArtinWord { letters: indices.iter().map(|&i| (i, 1)).collect() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        ArtinWord { letters: self.letters.iter().rev().map(|&(i, e)| (i, -e)).collect() }
    }

    pub fn concat(&self, other: &ArtinWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        ArtinWord { letters }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = ArtinWord::default();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Renames vertex `i` to `map[i]`.
    pub fn reindex(&self, map: &[usize]) -> Self {
        ArtinWord { letters: self.letters.iter().map(|&(i, e)| (map[i], e)).collect() }
    }

    /// Freely reduced copy.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(self.letters.len());
        for &(i, e) in &self.letters {
            if out.last() == Some(&(i, -e)) {
                out.pop();
            } else {
                out.push((i, e));
            }
        }
        ArtinWord { letters: out }
    }

    /// Text form using the vertex labels of `g`.
    pub fn display(&self, g: &CoxeterGraph) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let terms: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, e)| if e > 0 { format!("t{}", g.label(i)) } else { format!("t{}^-1", g.label(i)) })
            .collect();
        terms.join(" ")
    }
}

/// Garside element of `g`: the greedy reduced word of `w_0` for each
/// connected component, components in vertex order.
pub fn garside_delta(g: &CoxeterGraph) -> Result<ArtinWord> {
    let t = classify(g);
    if !t.is_finite() {
        return Err(Error::NotFinite(t.to_string()));
    }
    let mut word = ArtinWord::default();
    for comp in g.components() {
        let sub = full_subgraph(g, &comp)?;
        let (_, w) = reflection_rep(&sub)?.longest_element()?;
        word = word.concat(&ArtinWord::positive(&w).reindex(&comp));
    }
    Ok(word)
}

/// `Δ` of the full subgraph on `subset`, as a word in the indices of `g`.
pub fn delta_on(g: &CoxeterGraph, subset: &[usize]) -> Result<ArtinWord> {
    let mut keep = subset.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let sub = full_subgraph(g, &keep)?;
    Ok(garside_delta(&sub)?.reindex(&keep))
}

/// Vertex set named by the argument of a `D(...)` macro: a diagram type such
/// as `E6` or an explicit label list `[1,2,3]`. Absent argument means all of `g`.
///
/// A type name must match a full subgraph; among several matches, those
/// avoiding the vertex labelled `0` are preferred, then the smallest index set.
pub fn resolve_subgraph(g: &CoxeterGraph, arg: Option<&str>) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    let Some(arg) = arg.map(str::trim) else { return Ok((0..n).collect()) };
    if let Some(inner) = arg.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let mut out = Vec::new();
        for l in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            out.push(g.index_of(l).ok_or_else(|| Error::invalid(format!("no vertex labelled `{l}`")))?);
        }
        out.sort_unstable();
        out.dedup();
        if out.is_empty() {
            return Err(Error::EmptySubset);
        }
        return Ok(out);
    }
    let mut best: Option<(bool, Vec<usize>)> = None;
    for mask in 1u64..(1u64 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let sub = full_subgraph(g, &subset)?;
        if classify(&sub).to_string() != arg {
            continue;
        }
        let has0 = subset.iter().any(|&i| g.label(i) == "0");
        let better = match &best {
            None => true,
            Some((b0, bs)) => (has0, &subset) < (*b0, bs),
        };
        if better {
            best = Some((has0, subset));
        }
    }
    best.map(|(_, s)| s).ok_or_else(|| Error::invalid(format!("no full subgraph of type {arg}")))
}

/// Splits text into whitespace-separated terms, keeping bracketed groups
/// such as `g(0,7)` or `D[1, 2]` intact. Returns `(byte offset, term)`.
pub fn split_terms(text: &str) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start: Option<usize> = None;
    for (pos, ch) in text.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(pos, "unbalanced bracket"));
                }
            }
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if let Some(s) = start.take() {
                out.push((s, &text[s..pos]));
            }
        } else if start.is_none() {
            start = Some(pos);
        }
    }
    if depth != 0 {
        return Err(Error::parse(text.len(), "unbalanced bracket"));
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    Ok(out)
}

/// Splits `name^k` into `(name, k)`.
pub fn split_exponent(term: &str) -> std::result::Result<(&str, i64), String> {
    match term.rfind('^') {
        Some(p) if !term[p..].contains(')') && !term[p..].contains(']') => {
            let e = term[p + 1..].parse::<i64>().map_err(|_| format!("bad exponent in `{term}`"))?;
            Ok((&term[..p], e))
        }
        _ => Ok((term, 1)),
    }
}

/// Expands `D`, `D(E6)` or `D[1,2,3]`; `None` if `name` is not a macro.
pub fn expand_delta_macro(g: &CoxeterGraph, name: &str) -> Option<Result<ArtinWord>> {
    let arg = if name == "D" {
        None
    } else if let Some(inner) = name.strip_prefix("D(").and_then(|s| s.strip_suffix(')')) {
        Some(inner)
    } else if name.starts_with("D[") && name.ends_with(']') {
        Some(&name[1..])
    } else {
        return None;
    };
    Some(resolve_subgraph(g, arg).and_then(|s| delta_on(g, &s)))
}

/// Parses `t3 t1^-1 D(E6)^2 1` into a word over the vertices of `g`.
pub fn parse_word(g: &CoxeterGraph, text: &str) -> Result<ArtinWord> {
    let mut word = ArtinWord::default();
    for (pos, term) in split_terms(text)? {
        if term == "1" {
            continue;
        }
        let (name, e) = split_exponent(term).map_err(|m| Error::parse(pos, m))?;
        let base = if let Some(d) = expand_delta_macro(g, name) {
            d?
        } else if let Some(label) = name.strip_prefix('t') {
            let i = g.index_of(label).ok_or_else(|| Error::parse(pos, format!("unknown generator `{name}`")))?;
            ArtinWord::positive(&[i])
        } else {
            return Err(Error::parse(pos, format!("unknown term `{term}`")));
        };
        word = word.concat(&base.pow(e));
    }
    Ok(word)
}

/// `Δ^delta_power · x_1 ⋯ x_k` with left-weighted simple factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GarsideNormalForm {
    pub delta_power: i64,
    pub factors: Vec<GroupElement>,
}

#[derive(Clone, Debug)]
struct Simple {
    m: GroupElement,
    inv: GroupElement,
}

/// Normal form engine for one finite-type graph.
#[derive(Clone, Debug)]
pub struct Garside {
    cd: CartanData,
    w0: GroupElement,
    delta: ArtinWord,
}

impl Garside {
    pub fn new(g: &CoxeterGraph) -> Result<Self> {
        let cd = reflection_rep(g)?;
        let t = cd.diagram_type();
        let order = t.weyl_order().ok_or_else(|| Error::NotFinite(t.to_string()))?;
        if order > ORDER_CAP as u128 {
            return Err(Error::Overflow(ORDER_CAP));
        }
        let (w0, _) = cd.longest_element()?;
        let delta = garside_delta(g)?;
        Ok(Garside { cd, w0, delta })
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cd
    }

    pub fn delta(&self) -> &ArtinWord {
        &self.delta
    }

    fn right_desc(&self, x: &Simple, i: usize) -> bool {
        is_negative(&x.m.column(i))
    }

    fn left_desc(&self, y: &Simple, i: usize) -> bool {
        is_negative(&y.inv.column(i))
    }

    /// Moves letters from `y` into `x` until `L(y) ⊆ R(x)`. Returns whether anything moved.
    fn left_weight(&self, x: &mut Simple, y: &mut Simple) -> bool {
        let n = self.cd.rank();
        let mut moved = false;
        while let Some(i) = (0..n).find(|&i| self.left_desc(y, i) && !self.right_desc(x, i)) {
            x.m = self.cd.mul_simple_right(&x.m, i);
            x.inv = self.cd.mul_simple_left(i, &x.inv);
            y.m = self.cd.mul_simple_left(i, &y.m);
            y.inv = self.cd.mul_simple_right(&y.inv, i);
            moved = true;
        }
        moved
    }

    fn conj_w0(&self, x: &Simple) -> Simple {
        Simple { m: &(&self.w0 * &x.m) * &self.w0, inv: &(&self.w0 * &x.inv) * &self.w0 }
    }

    /// Appends `s` and restores left-weightedness.
    fn push(&self, factors: &mut Vec<Simple>, s: Simple) {
        factors.push(s);
        loop {
            let mut changed = false;
            for k in (0..factors.len().saturating_sub(1)).rev() {
                let (a, b) = factors.split_at_mut(k + 1);
                if self.left_weight(&mut a[k], &mut b[0]) {
                    changed = true;
                }
            }
            factors.retain(|f| !f.m.is_identity());
            if !changed {
                break;
            }
        }
    }

    pub fn normal_form(&self, w: &ArtinWord) -> Result<GarsideNormalForm> {
        let n = self.cd.rank();
        if let Some(&(i, _)) = w.letters.iter().find(|&&(i, _)| i >= n) {
            return Err(Error::invalid(format!("letter index {i} out of range")));
        }
        let mut p: i64 = 0;
        let mut factors: Vec<Simple> = Vec::new();
        for &(i, e) in &w.letters {
            let s = self.cd.simple_reflection(i);
            if e > 0 {
                self.push(&mut factors, Simple { m: s.clone(), inv: s });
            } else {
                // t_i^{-1} = Δ^{-1} t(w_0 s_i), and x Δ^{-1} = Δ^{-1} (w_0 x w_0).
                p -= 1;
                factors = factors.iter().map(|f| self.conj_w0(f)).collect();
                let m = &self.w0 * &s;
                let inv = &s * &self.w0;
                self.push(&mut factors, Simple { m, inv });
            }
        }
        let lead = factors.iter().take_while(|f| f.m == self.w0).count();
        Ok(GarsideNormalForm {
            delta_power: p + lead as i64,
            factors: factors.into_iter().skip(lead).map(|f| f.m).collect(),
        })
    }

    pub fn words_equal(&self, u: &ArtinWord, v: &ArtinWord) -> Result<bool> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// The word `Δ^p · t(x_1) ⋯ t(x_k)`.
    pub fn spell(&self, nf: &GarsideNormalForm) -> Result<ArtinWord> {
        let mut w = self.delta.pow(nf.delta_power);
        for f in &nf.factors {
            w = w.concat(&ArtinWord::positive(&self.cd.reduced_word(f)?));
        }
        Ok(w)
    }

    /// Positive lift `t(w)` of a Weyl group element.
    pub fn lift(&self, w: &GroupElement) -> Result<ArtinWord> {
        Ok(ArtinWord::positive(&self.cd.reduced_word(w)?))
    }

    /// `j` with `Δ t_i Δ^{-1} = t_j`, confirmed by normal forms.
    pub fn conj_by_delta(&self, i: usize) -> Result<usize> {
        let j = self.cd.canonical_involution()?.apply(i);
        let lhs = self.delta.concat(&ArtinWord::positive(&[i])).concat(&self.delta.inverse());
        if !self.words_equal(&lhs, &ArtinWord::positive(&[j]))? {
            return Err(Error::invalid("Δ-conjugation disagrees with the canonical involution"));
        }
        Ok(j)
    }

    pub fn identity(&self) -> GroupElement {
        IntMatrix::identity(self.cd.rank())
    }
}

pub fn normal_form(g: &CoxeterGraph, w: &ArtinWord) -> Result<GarsideNormalForm> {
    Garside::new(g)?.normal_form(w)
}

pub fn words_equal(g: &CoxeterGraph, u: &ArtinWord, v: &ArtinWord) -> Result<bool> {
    Garside::new(g)?.words_equal(u, v)
}

pub fn conj_by_delta(g: &CoxeterGraph, i: usize) -> Result<usize> {
    Garside::new(g)?.conj_by_delta(i)
}

impl fmt::Display for GarsideNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.delta_power)?;
        for x in &self.factors {
            write!(f, " · {x}")?;
        }
        Ok(())
    }
}
