//! Affine realization of an affine Coxeter graph: the alcove, its vertices,
//! special vertices, the involutions `g_i`, `g_ij` and the group `S(Γ)`.
//!
//! Points of the affine space are written in fundamental-coweight
//! coordinates `x_k = α_k(x)` of the finite part `Γ_0` (the graph minus the
//! anchor vertex `0`). The alcove is `{x : x_k ≥ 0, θ(x) ≤ 1}` with `θ` the
//! highest root, translations form the coroot lattice `Q` and the coweight
//! lattice `P = ℤ^l`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::garside::delta_on;
use crate::graphs::{automorphisms, classify, complement, full_subgraph, CoxeterGraph, GraphAutomorphism};
use crate::lattice::{determinant, primitive, rational_kernel, smith_form, to_big, Q};
use crate::weylrep::{highest_root, reflection_rep, CartanData};
use crate::{Error, Result};

fn q(x: i64) -> Q {
    Q::from_integer(x)
}

/// `x ↦ linear · x + translation` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub linear: Vec<Vec<Q>>,
    pub translation: Vec<Q>,
}

impl AffineMap {
    pub fn identity(l: usize) -> Self {
        let linear = (0..l).map(|i| (0..l).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect();
        AffineMap { linear, translation: vec![q(0); l] }
    }

    pub fn translation_by(v: &[Q]) -> Self {
        AffineMap { translation: v.to_vec(), ..Self::identity(v.len()) }
    }

    /// `x ↦ 2p − x`.
    pub fn point_reflection(p: &[Q]) -> Self {
        let l = p.len();
        let linear = (0..l).map(|i| (0..l).map(|j| if i == j { q(-1) } else { q(0) }).collect()).collect();
        AffineMap { linear, translation: p.iter().map(|x| x * q(2)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        (0..self.dim())
            .map(|i| (0..self.dim()).fold(self.translation[i], |acc, j| acc + self.linear[i][j] * x[j]))
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let l = self.dim();
        let linear = (0..l)
            .map(|i| (0..l).map(|j| (0..l).fold(q(0), |acc, k| acc + self.linear[i][k] * other.linear[k][j])).collect())
            .collect();
        let translation = self.apply(&other.translation);
        AffineMap { linear, translation }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    /// Whether the linear part is `±1`.
    pub fn linear_is_scalar_sign(&self) -> bool {
        let l = self.dim();
        [q(1), q(-1)].iter().any(|s| {
            (0..l).all(|i| (0..l).all(|j| self.linear[i][j] == if i == j { *s } else { q(0) }))
        })
    }
}

#[derive(Clone, Debug)]
pub struct AffineRealization {
    pub graph: CoxeterGraph,
    /// Index of the affine vertex (label `0` for catalogue graphs).
    pub anchor: usize,
    /// Graph indices of the finite part `Γ_0`, in coordinate order.
    pub finite_vertices: Vec<usize>,
    pub finite_part: CartanData,
    /// Primitive kernel of the affine Cartan matrix: `δ = Σ marks_i α_i`.
    pub marks: Vec<i64>,
    /// Primitive kernel of the transposed affine Cartan matrix.
    pub comarks: Vec<i64>,
    /// `a_anchor = 0`, `a_j = ω_j^∨ / marks_j`, indexed by graph vertex.
    pub alcove_vertices: Vec<Vec<Q>>,
    /// `[P : Q] = det` of the finite Cartan matrix.
    pub q_index: i64,
    /// Affine reflections `s_i`, indexed by graph vertex.
    pub reflections: Vec<AffineMap>,
}

/// Checks that `j` is the affine node over the finite graph `I − {j}`.
fn anchor_ok(a: &[Vec<i64>], j: usize) -> Option<Vec<i64>> {
    let n = a.len();
    let rest: Vec<usize> = (0..n).filter(|&k| k != j).collect();
    let af: Vec<Vec<i64>> = rest.iter().map(|&r| rest.iter().map(|&c| a[r][c]).collect()).collect();
    let theta = highest_root(&af).ok()?;
    let mut marks = vec![1; n];
    for (fi, &k) in rest.iter().enumerate() {
        marks[k] = theta[fi];
    }
    let ok = (0..n).all(|r| (0..n).map(|c| a[r][c] * marks[c]).sum::<i64>() == 0);
    ok.then_some(marks)
}

pub fn realize(g: &CoxeterGraph) -> Result<AffineRealization> {
    let t = classify(g);
    if !t.is_affine() {
        return Err(Error::NotAffine(t.to_string()));
    }
    let a = g.cartan_matrix()?;
    let n = g.vertex_count();
    let order: Vec<usize> = match g.index_of("0") {
        Some(z) => std::iter::once(z).chain((0..n).filter(|&k| k != z)).collect(),
        None => (0..n).collect(),
    };
    let (anchor, marks) = order
        .iter()
        .find_map(|&j| anchor_ok(&a, j).map(|m| (j, m)))
        .ok_or_else(|| Error::NotAffine("no vertex completes its complement".into()))?;
    let finite_vertices = complement(g, &[anchor]);
    let finite_part = reflection_rep(&full_subgraph(g, &finite_vertices)?)?;
    let at: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| a[c][r]).collect()).collect();
    let ker = rational_kernel(&at);
    if ker.len() != 1 {
        return Err(Error::NotAffine("transposed Cartan kernel is not one-dimensional".into()));
    }
    let comarks = primitive(&ker[0]);
    let l = finite_vertices.len();
    let af = &finite_part.cartan;
    // θ^∨ in coweight coordinates: ⟨θ^∨, α_k⟩ = −a_{anchor,k}.
    let theta_co: Vec<i64> = finite_vertices.iter().map(|&k| -a[anchor][k]).collect();
    let theta: Vec<i64> = finite_vertices.iter().map(|&k| marks[k]).collect();
    let mut reflections = vec![AffineMap::identity(l); n];
    for (fi, &k) in finite_vertices.iter().enumerate() {
        let m = &mut reflections[k];
        for r in 0..l {
            m.linear[r][fi] -= q(af[fi][r]);
        }
    }
    let s0 = &mut reflections[anchor];
    for r in 0..l {
        for c in 0..l {
            s0.linear[r][c] -= q(theta_co[r] * theta[c]);
        }
        s0.translation[r] = q(theta_co[r]);
    }
    let mut alcove_vertices = vec![vec![q(0); l]; n];
    for (fi, &k) in finite_vertices.iter().enumerate() {
        alcove_vertices[k][fi] = Q::new(1, marks[k]);
    }
    let q_index: i64 = determinant(af).try_into().map_err(|_| Error::invalid("determinant overflow"))?;
    Ok(AffineRealization {
        graph: g.clone(),
        anchor,
        finite_vertices,
        finite_part,
        marks,
        comarks,
        alcove_vertices,
        q_index,
        reflections,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialStructure {
    pub special: Vec<usize>,
    pub minuscule_pairs: Vec<(usize, usize)>,
    pub g_i: BTreeMap<usize, GraphAutomorphism>,
    pub g_ij: BTreeMap<(usize, usize), GraphAutomorphism>,
    /// The group generated by all `g_i` and `g_ij`, sorted, identity first.
    pub s_gamma: Vec<GraphAutomorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub pass: bool,
}

impl AffineRealization {
    pub fn dim(&self) -> usize {
        self.finite_vertices.len()
    }

    pub fn label(&self, i: usize) -> &str {
        self.graph.label(i)
    }

    /// Product `s_{i_1} ∘ ⋯ ∘ s_{i_k}` of affine reflections.
    pub fn word_map(&self, word: &[usize]) -> AffineMap {
        word.iter().fold(AffineMap::identity(self.dim()), |acc, &i| acc.compose(&self.reflections[i]))
    }

    /// Longest element of the parabolic subgroup on `subset`, via its Garside word.
    pub fn longest_map(&self, subset: &[usize]) -> Result<AffineMap> {
        if subset.is_empty() {
            return Ok(AffineMap::identity(self.dim()));
        }
        let w = delta_on(&self.graph, subset)?;
        Ok(self.word_map(&w.letters.iter().map(|&(i, _)| i).collect::<Vec<_>>()))
    }

    /// Vertex permutation induced by `f`, if `f` permutes the alcove vertices.
    pub fn vertex_permutation(&self, f: &AffineMap) -> Option<GraphAutomorphism> {
        let perm: Option<Vec<usize>> = self
            .alcove_vertices
            .iter()
            .map(|v| {
                let img = f.apply(v);
                self.alcove_vertices.iter().position(|u| *u == img)
            })
            .collect();
        perm.map(|perm| GraphAutomorphism { perm })
    }

    /// The unique affine map sending `a_k` to `a_{π(k)}` for every vertex.
    pub fn affine_action(&self, pi: &GraphAutomorphism) -> AffineMap {
        let l = self.dim();
        let base = &self.alcove_vertices[pi.apply(self.anchor)];
        let mut linear = vec![vec![q(0); l]; l];
        for (fi, &k) in self.finite_vertices.iter().enumerate() {
            let img = &self.alcove_vertices[pi.apply(k)];
            for r in 0..l {
                linear[r][fi] = (img[r] - base[r]) * q(self.marks[k]);
            }
        }
        AffineMap { linear, translation: base.clone() }
    }

    /// `ι_j`: point reflection at `a_j`.
    pub fn iota(&self, j: usize) -> AffineMap {
        AffineMap::point_reflection(&self.alcove_vertices[j])
    }

    /// `ι_ij`: point reflection at the midpoint of `a_i` and `a_j`.
    pub fn iota_pair(&self, i: usize, j: usize) -> AffineMap {
        let mid: Vec<Q> =
            self.alcove_vertices[i].iter().zip(&self.alcove_vertices[j]).map(|(x, y)| (x + y) / q(2)).collect();
        AffineMap::point_reflection(&mid)
    }

    /// `w_{Γ_j} ∘ ι_j` as a vertex permutation, if it preserves the alcove.
    pub fn g_vertex(&self, j: usize) -> Result<Option<GraphAutomorphism>> {
        let w = self.longest_map(&complement(&self.graph, &[j]))?;
        Ok(self.vertex_permutation(&w.compose(&self.iota(j))))
    }

    /// `w_{Γ_ij} ∘ ι_ij` as a vertex permutation, if it preserves the alcove.
    pub fn g_pair(&self, i: usize, j: usize) -> Result<Option<GraphAutomorphism>> {
        let w = self.longest_map(&complement(&self.graph, &[i, j]))?;
        Ok(self.vertex_permutation(&w.compose(&self.iota_pair(i, j))))
    }

    /// Vertices whose alcove vertex lies in `P`, i.e. mark 1.
    pub fn special_vertices(&self) -> Vec<usize> {
        (0..self.graph.vertex_count()).filter(|&i| self.marks[i] == 1).collect()
    }

    /// Vertices `i` maximizing `|W_{Γ_i}|`.
    pub fn max_order_vertices(&self) -> Vec<usize> {
        let orders: Vec<u128> = (0..self.graph.vertex_count())
            .map(|i| {
                let sub = full_subgraph(&self.graph, &complement(&self.graph, &[i])).unwrap();
                classify(&sub).weyl_order().unwrap_or(0)
            })
            .collect();
        let max = *orders.iter().max().unwrap();
        (0..orders.len()).filter(|&i| orders[i] == max).collect()
    }

    pub fn special_structure(&self) -> Result<SpecialStructure> {
        let special = self.special_vertices();
        let mut minuscule_pairs = Vec::new();
        for (a, &i) in special.iter().enumerate() {
            for &j in &special[a + 1..] {
                minuscule_pairs.push((i, j));
            }
        }
        let mut g_i = BTreeMap::new();
        for &j in &special {
            let g = self.g_vertex(j)?.ok_or_else(|| {
                Error::invalid(format!("w_j ι_j does not preserve the alcove at special vertex {}", self.label(j)))
            })?;
            g_i.insert(j, g);
        }
        let mut g_ij = BTreeMap::new();
        for &(i, j) in &minuscule_pairs {
            let g = self.g_pair(i, j)?.ok_or_else(|| {
                Error::invalid(format!("w_ij ι_ij does not preserve the alcove at {}, {}", self.label(i), self.label(j)))
            })?;
            g_ij.insert((i, j), g);
        }
        let gens: Vec<GraphAutomorphism> = g_i.values().chain(g_ij.values()).cloned().collect();
        let s_gamma = generate_group(self.graph.vertex_count(), &gens);
        Ok(SpecialStructure { special, minuscule_pairs, g_i, g_ij, s_gamma })
    }

    /// All vertices `j` for which `w_{Γ_j} ∘ ι_j` permutes the alcove vertices.
    pub fn nonspecial_blowup_candidates(&self) -> Result<Vec<(usize, GraphAutomorphism)>> {
        let mut out = Vec::new();
        for j in 0..self.graph.vertex_count() {
            if let Some(g) = self.g_vertex(j)? {
                out.push((j, g));
            }
        }
        Ok(out)
    }

    /// Moves `x` into the closed alcove by simple affine reflections; returns
    /// the accumulated element `w` with `w(x) ∈ C`.
    pub fn fold_into_alcove(&self, x: &[Q]) -> AffineMap {
        let mut w = AffineMap::identity(self.dim());
        let mut y = x.to_vec();
        let theta: Vec<i64> = self.finite_vertices.iter().map(|&k| self.marks[k]).collect();
        loop {
            let wall = if let Some(fi) = (0..self.dim()).find(|&fi| y[fi] < q(0)) {
                self.finite_vertices[fi]
            } else if y.iter().zip(&theta).fold(q(0), |acc, (a, &m)| acc + a * q(m)) > q(1) {
                self.anchor
            } else {
                return w;
            };
            let s = &self.reflections[wall];
            y = s.apply(&y);
            w = s.compose(&w);
        }
    }

    /// `π_j`: the alcove automorphism induced by the translation `a_j − a_0`.
    pub fn translation_class(&self, j: usize) -> Option<GraphAutomorphism> {
        let tau = AffineMap::translation_by(&self.alcove_vertices[j]);
        let l = self.dim() as i64;
        let n = self.graph.vertex_count() as i64;
        let center: Vec<Q> = (0..self.dim())
            .map(|r| self.alcove_vertices.iter().fold(q(0), |acc, v| acc + v[r]) / q(n.max(l + 1)))
            .collect();
        let w = self.fold_into_alcove(&tau.apply(&center));
        self.vertex_permutation(&w.compose(&tau))
    }

    /// Exact identities among affine maps; failures are reported, not thrown.
    pub fn check_affine_identities(&self) -> Vec<IdentityCheck> {
        let mut out = Vec::new();
        let mut push = |identity: String, pass: bool| out.push(IdentityCheck { identity, pass });
        let st = match self.special_structure() {
            Ok(st) => st,
            Err(e) => {
                push(format!("special structure: {e}"), false);
                return out;
            }
        };
        let lab = |i: usize| self.label(i).to_string();
        let l = self.dim();

        for &j in &st.special {
            let wj = self.longest_map(&complement(&self.graph, &[j])).unwrap();
            let lhs = self.iota(j);
            let rhs = wj.compose(&self.affine_action(&st.g_i[&j]));
            push(format!("iota_{0} = w_{0} g_{0}", lab(j)), lhs == rhs);
        }

        for &(x, y) in &st.minuscule_pairs {
            for (i, j) in [(x, y), (y, x)] {
                let diff: Vec<Q> =
                    self.alcove_vertices[i].iter().zip(&self.alcove_vertices[j]).map(|(a, b)| a - b).collect();
                let tau = AffineMap::translation_by(&diff);
                let via_iota = self.iota_pair(i, j).compose(&self.iota(j));
                let wij = self.longest_map(&complement(&self.graph, &[i, j])).unwrap();
                let wj = self.longest_map(&complement(&self.graph, &[j])).unwrap();
                let via_g = wij
                    .compose(&self.affine_action(&st.g_ij[&(x, y)]))
                    .compose(&wj)
                    .compose(&self.affine_action(&st.g_i[&j]));
                push(
                    format!("tau(a_{0} - a_{1}) = iota_{0}{1} iota_{1} = w_{0}{1} g_{0}{1} w_{1} g_{1}", lab(i), lab(j)),
                    tau == via_iota && tau == via_g,
                );
            }
        }

        let af = &self.finite_part.cartan;
        let snf_index = smith_form(&to_big(af)).product();
        push(
            format!("[P:Q] by Smith form = det Cartan = {}", self.q_index),
            snf_index == num_bigint::BigInt::from(self.q_index),
        );

        let mut gens: Vec<Vec<i64>> = af.clone();
        for &i in &st.special {
            for &j in &st.special {
                if i != j {
                    let d: Vec<i64> = (0..l)
                        .map(|r| (self.alcove_vertices[j][r] - self.alcove_vertices[i][r]).to_integer())
                        .collect();
                    gens.push(d);
                }
            }
        }
        let lattice = smith_form(&to_big(&gens));
        let index_over_q = if lattice.rank() == l {
            Some(snf_index.clone() / lattice.product())
        } else {
            None
        };
        push(
            format!("Q and the differences a_j - a_i generate a lattice of index {} over Q", self.q_index),
            index_over_q == Some(num_bigint::BigInt::from(self.q_index)),
        );

        let classes: Option<Vec<(usize, GraphAutomorphism)>> =
            st.special.iter().map(|&j| self.translation_class(j).map(|p| (j, p))).collect();
        let pass = match classes {
            None => false,
            Some(classes) => {
                let set: BTreeSet<&GraphAutomorphism> = classes.iter().map(|(_, p)| p).collect();
                let sharp = classes.iter().all(|(j, p)| p.apply(self.anchor) == *j);
                let transitive = st.special.iter().all(|&i| {
                    let imgs: BTreeSet<usize> = classes.iter().map(|(_, p)| p.apply(i)).collect();
                    imgs == st.special.iter().copied().collect()
                });
                let closed = set.iter().all(|a| set.iter().all(|b| set.contains(&a.compose(b))));
                let in_s = set.iter().all(|p| st.s_gamma.contains(p));
                let exponent = set.iter().map(|p| p.order()).max().unwrap_or(1);
                let largest = lattice_largest_factor(af);
                set.len() == st.special.len()
                    && set.len() as i64 == self.q_index
                    && sharp
                    && transitive
                    && closed
                    && in_s
                    && exponent as i64 == largest
            }
        };
        push(format!("P/Q (order {}) acts simply transitively on the special vertices", self.q_index), pass);
        out
    }

    /// `P/Q` as alcove automorphisms `π_j`, keyed by special vertex.
    pub fn pq_action(&self) -> Vec<(usize, Option<GraphAutomorphism>)> {
        self.special_vertices().into_iter().map(|j| (j, self.translation_class(j))).collect()
    }
}

fn lattice_largest_factor(a: &[Vec<i64>]) -> i64 {
    smith_form(&to_big(a)).diagonal.last().map(|d| d.try_into().unwrap()).unwrap_or(1)
}

/// Closure of `gens` under composition.
pub fn generate_group(n: usize, gens: &[GraphAutomorphism]) -> Vec<GraphAutomorphism> {
    let mut set: BTreeSet<GraphAutomorphism> = BTreeSet::new();
    let id = GraphAutomorphism::identity(n);
    set.insert(id.clone());
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.compose(&x);
            if set.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    set.into_iter().collect()
}

/// Whether `pi` preserves the multiplicities of `g`.
pub fn is_graph_automorphism(g: &CoxeterGraph, pi: &GraphAutomorphism) -> bool {
    automorphisms(g).contains(pi)
}
