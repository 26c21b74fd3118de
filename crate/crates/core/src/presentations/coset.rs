//! HLT coset enumeration with lookahead.
//!
//! Cosets are numbered from 1; table entry 0 means undefined. Generators
//! declared involutory by a relator `x^2` share one column for `x` and `x^-1`.

use std::time::{Duration, Instant};

use serde::Serialize;

use super::{Presentation, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Finished { index: u64 },
    CosetLimitExceeded,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationResult {
    pub outcome: Outcome,
    /// Total number of coset definitions made.
    pub cosets_defined: u64,
    /// Largest number of simultaneously allocated cosets.
    pub max_active: u64,
    #[serde(serialize_with = "ser_ms")]
    pub elapsed: Duration,
}

fn ser_ms<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl EnumerationResult {
    pub fn order(&self) -> Option<u64> {
        match self.outcome {
            Outcome::Finished { index } => Some(index),
            Outcome::CosetLimitExceeded => None,
        }
    }
}

pub const DEFAULT_MAX_COSETS: usize = 2_000_000;

struct Table {
    cols: usize,
    inv: Vec<usize>,
    data: Vec<u32>,
    /// Union-find parent; `parent[c] == c` for live cosets.
    parent: Vec<u32>,
    next: usize,
    limit: usize,
    defined: u64,
    max_active: u64,
    queue: Vec<u32>,
}

impl Table {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.data[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.data[c as usize * self.cols + x] = v;
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let nx = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = nx;
        }
        r
    }

    fn new_coset(&mut self) -> Option<u32> {
        if self.next > self.limit {
            return None;
        }
        let c = self.next as u32;
        self.next += 1;
        let need = self.next * self.cols;
        if self.data.len() < need {
            let grow = need.max(self.data.len() * 2).min((self.limit + 1) * self.cols);
            self.data.resize(grow, 0);
        }
        if self.parent.len() <= c as usize {
            self.parent.resize(c as usize + 1, 0);
        }
        self.parent[c as usize] = c;
        self.defined += 1;
        self.max_active = self.max_active.max(c as u64);
        Some(c)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == 0 {
                    continue;
                }
                let xi = self.inv[x];
                if self.get(f, xi) == e {
                    self.set(f, xi, 0);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let t = self.get(e1, x);
                if t != 0 {
                    self.merge(f1, t);
                } else {
                    let u = self.get(f1, xi);
                    if u != 0 {
                        self.merge(e1, u);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, xi, e1);
                    }
                }
            }
        }
    }

    /// Scans `c · w` from both ends; fills a single gap by deduction and
    /// defines new cosets for longer gaps when `fill` is set. Returns
    /// `false` if a definition was needed but the table is full.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> bool {
        let n = w.len();
        loop {
            let mut f = c;
            let mut i = 0;
            while i < n {
                let t = self.get(f, w[i]);
                if t == 0 {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == n {
                if f != c {
                    self.coincidence(f, c);
                }
                return true;
            }
            let mut b = c;
            let mut j = n;
            while j > i {
                let t = self.get(b, self.inv[w[j - 1]]);
                if t == 0 {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return true;
            }
            if j == i + 1 {
                let x = w[i];
                self.set(f, x, b);
                self.set(b, self.inv[x], f);
                return true;
            }
            if !fill {
                return true;
            }
            let Some(d) = self.new_coset() else { return false };
            let x = w[i];
            self.set(f, x, d);
            self.set(d, self.inv[x], f);
        }
    }

    /// Renumbers live cosets consecutively; returns the new index of the
    /// first live coset at or after `pos`.
    fn compact(&mut self, pos: usize) -> usize {
        let mut map = vec![0u32; self.next];
        let mut k = 0u32;
        let mut new_pos = None;
        for c in 1..self.next {
            if self.live(c as u32) {
                k += 1;
                map[c] = k;
                if c >= pos && new_pos.is_none() {
                    new_pos = Some(k as usize);
                }
            }
        }
        for c in 1..self.next {
            let nc = map[c];
            if nc == 0 {
                continue;
            }
            for x in 0..self.cols {
                let v = self.get(c as u32, x);
                let nv = if v == 0 { 0 } else { map[v as usize] };
                self.set(nc, x, nv);
            }
        }
        let live = k as usize;
        for c in live + 1..self.next {
            for x in 0..self.cols {
                self.set(c as u32, x, 0);
            }
        }
        self.next = live + 1;
        for c in 0..=live {
            self.parent[c] = c as u32;
        }
        new_pos.unwrap_or(self.next)
    }

    fn lookahead(&mut self, rels: &[Vec<usize>]) {
        let mut c = 1;
        while c < self.next {
            for r in rels {
                if !self.live(c as u32) {
                    break;
                }
                self.scan(c as u32, r, false);
            }
            c += 1;
        }
    }

    fn closed(&self, rels: &[Vec<usize>], subgroup: &[Vec<usize>]) -> bool {
        for c in 1..self.next as u32 {
            if !self.live(c) {
                continue;
            }
            if (0..self.cols).any(|x| self.get(c, x) == 0) {
                return false;
            }
            let fixes = |w: &Vec<usize>| w.iter().fold(c, |f, &x| self.get(f, x)) == c;
            if !rels.iter().all(fixes) {
                return false;
            }
        }
        subgroup.iter().all(|w| w.iter().fold(1u32, |f, &x| self.get(f, x)) == 1)
    }
}

/// Index of the subgroup generated by `subgroup` in the group presented by `p`.
pub fn coset_enumerate(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> EnumerationResult {
    let start = Instant::now();
    let ngens = p.generators.len();
    let involutory: Vec<bool> = (0..ngens)
        .map(|g| p.relators.iter().any(|r| r.len() == 2 && r[0].0 == g && r[1] == r[0]))
        .collect();
    let mut col_of = vec![[0usize; 2]; ngens];
    let mut inv = Vec::new();
    for g in 0..ngens {
        let c = inv.len();
        if involutory[g] {
            col_of[g] = [c, c];
            inv.push(c);
        } else {
            col_of[g] = [c, c + 1];
            inv.push(c + 1);
            inv.push(c);
        }
    }
    let cols = inv.len();
    let encode = |w: &Word| -> Vec<usize> {
        w.iter().map(|&(g, e)| col_of[g][usize::from(e < 0)]).collect()
    };
    let mut rels: Vec<Vec<usize>> = Vec::new();
    for r in &p.relators {
        let w = encode(r);
        let trivial_square = w.len() == 2 && w[0] == w[1] && inv[w[0]] == w[0];
        if !w.is_empty() && !trivial_square && !rels.contains(&w) {
            rels.push(w);
        }
    }
    let subs: Vec<Vec<usize>> = subgroup.iter().map(encode).filter(|w| !w.is_empty()).collect();

    let limit = max_cosets.max(1);
    let mut t = Table {
        cols,
        inv,
        data: vec![0; 2 * cols.max(1) * 1024.min(limit + 1)],
        parent: vec![0],
        next: 1,
        limit,
        defined: 0,
        max_active: 0,
        queue: Vec::new(),
    };
    t.new_coset();
    let finish = |t: &Table, outcome| EnumerationResult {
        outcome,
        cosets_defined: t.defined,
        max_active: t.max_active,
        elapsed: start.elapsed(),
    };
    // Retries a scan after freeing space: compaction first, then lookahead.
    let make_room = |t: &mut Table, pos: usize| -> Option<usize> {
        let live = (1..t.next).filter(|&c| t.live(c as u32)).count();
        if live + 1 < t.next {
            return Some(t.compact(pos));
        }
        t.lookahead(&rels);
        let live = (1..t.next).filter(|&c| t.live(c as u32)).count();
        if live + 1 < t.next {
            Some(t.compact(pos))
        } else {
            None
        }
    };
    for w in &subs {
        while !t.scan(1, w, true) {
            if make_room(&mut t, 1).is_none() {
                return finish(&t, Outcome::CosetLimitExceeded);
            }
        }
    }
    loop {
        let mut c = 1;
        'cosets: while c < t.next {
            let mut k = 0;
            while k < rels.len() && t.live(c as u32) {
                if t.scan(c as u32, &rels[k], true) {
                    k += 1;
                } else {
                    match make_room(&mut t, c) {
                        Some(nc) => c = nc,
                        None => return finish(&t, Outcome::CosetLimitExceeded),
                    }
                    if c >= t.next {
                        break;
                    }
                }
            }
            if c < t.next && t.live(c as u32) {
                for x in 0..cols {
                    if t.get(c as u32, x) == 0 {
                        match t.new_coset() {
                            Some(d) => {
                                t.set(c as u32, x, d);
                                let xi = t.inv[x];
                                t.set(d, xi, c as u32);
                            }
                            None => match make_room(&mut t, c) {
                                Some(nc) => {
                                    c = nc;
                                    continue 'cosets;
                                }
                                None => return finish(&t, Outcome::CosetLimitExceeded),
                            },
                        }
                    }
                }
            }
            c += 1;
        }
        if t.closed(&rels, &subs) {
            let index = (1..t.next).filter(|&c| t.live(c as u32)).count() as u64;
            return finish(&t, Outcome::Finished { index });
        }
    }
}
