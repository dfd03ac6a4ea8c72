//! Pruned searches over the full symmetric group of a finite domain.
//!
//! Both searches build a bijection point by point, propagate forced values,
//! and backtrack on contradiction. They return exactly the elements a brute
//! force filter over `Sym(Ω)` would return, without visiting all of `Sym(Ω)`.

use std::collections::HashMap;

use crate::perm::{Permutation, Point};

/// Index arrays over a fixed ordered domain.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub points: Vec<Point>,
    pub index: HashMap<Point, usize>,
}

impl Dense {
    pub fn new(points: &[Point]) -> Self {
        let mut points = points.to_vec();
        points.sort_unstable();
        points.dedup();
        let index = points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        Dense { points, index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// `None` if `x` moves a point outside the domain.
    pub fn to_dense(&self, x: &Permutation) -> Option<Vec<u32>> {
        let mut v: Vec<u32> = (0..self.points.len() as u32).collect();
        for &(a, b) in x.moved_pairs() {
            let (ia, ib) = (*self.index.get(&a)?, *self.index.get(&b)?);
            v[ia] = ib as u32;
        }
        Some(v)
    }

    pub fn to_perm(&self, v: &[u32]) -> Permutation {
        let moved = v
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i != j as usize)
            .map(|(i, &j)| (self.points[i], self.points[j as usize]))
            .collect();
        Permutation::from_sorted_unchecked(moved)
    }
}

fn inverse(v: &[u32]) -> Vec<u32> {
    let mut w = vec![0; v.len()];
    for (i, &j) in v.iter().enumerate() {
        w[j as usize] = i as u32;
    }
    w
}

const NONE: u32 = u32::MAX;

/// Elements `σ` of `Sym(domain)` commuting with every generator, optionally
/// restricted to fixed-point-free products of `q`-cycles. Stops after
/// `limit + 1` results; the flag reports whether the list is complete.
pub(crate) fn commuting(
    domain: &[Point],
    gens: &[Permutation],
    cycle_len: Option<usize>,
    limit: u64,
) -> (Vec<Permutation>, bool) {
    let dense = Dense::new(domain);
    let n = dense.len();
    let gens: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| dense.to_dense(g).expect("generator leaves the domain"))
        .collect();
    let invs: Vec<Vec<u32>> = gens.iter().map(|g| inverse(g)).collect();
    if let Some(q) = cycle_len {
        if q == 0 || !n.is_multiple_of(q) || (q == 1 && n > 0) {
            return (Vec::new(), true);
        }
    }
    let mut st = CommState {
        n,
        gens,
        invs,
        q: cycle_len,
        img: vec![NONE; n],
        pre: vec![NONE; n],
        trail: Vec::new(),
        out: Vec::new(),
        limit,
        dense: &dense,
    };
    let done = st.run();
    (st.out, done)
}

struct CommState<'a> {
    n: usize,
    gens: Vec<Vec<u32>>,
    invs: Vec<Vec<u32>>,
    q: Option<usize>,
    img: Vec<u32>,
    pre: Vec<u32>,
    trail: Vec<usize>,
    out: Vec<Permutation>,
    limit: u64,
    dense: &'a Dense,
}

impl CommState<'_> {
    /// Returns false if the result limit was hit.
    fn run(&mut self) -> bool {
        let Some(a) = (0..self.n).find(|&i| self.img[i] == NONE) else {
            self.out.push(self.dense.to_perm(&self.img));
            return (self.out.len() as u64) <= self.limit;
        };
        for b in 0..self.n {
            if self.pre[b] != NONE {
                continue;
            }
            if self.q.is_some() && a == b {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(a, b) && !self.run() {
                return false;
            }
            self.undo(mark);
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let i = self.trail.pop().unwrap();
            let j = self.img[i] as usize;
            self.img[i] = NONE;
            self.pre[j] = NONE;
        }
    }

    fn set(&mut self, a: usize, b: usize, queue: &mut Vec<(usize, usize)>) -> bool {
        if self.img[a] != NONE {
            return self.img[a] as usize == b;
        }
        if self.pre[b] != NONE {
            return false;
        }
        self.img[a] = b as u32;
        self.pre[b] = a as u32;
        self.trail.push(a);
        queue.push((a, b));
        true
    }

    fn assign(&mut self, a: usize, b: usize) -> bool {
        let mut queue = Vec::new();
        if !self.set(a, b, &mut queue) {
            return false;
        }
        let mut k = 0;
        while k < queue.len() {
            let (x, y) = queue[k];
            k += 1;
            for g in 0..self.gens.len() {
                let (gx, gy) = (self.gens[g][x] as usize, self.gens[g][y] as usize);
                let (hx, hy) = (self.invs[g][x] as usize, self.invs[g][y] as usize);
                if !self.set(gx, gy, &mut queue) || !self.set(hx, hy, &mut queue) {
                    return false;
                }
            }
        }
        match self.q {
            Some(q) => queue.iter().all(|&(x, _)| self.cycle_ok(x, q)),
            None => true,
        }
    }

    /// The chain through `x` closes with length `q` or is still open and shorter.
    fn cycle_ok(&self, x: usize, q: usize) -> bool {
        let mut cur = x;
        let mut steps = 0;
        loop {
            let nxt = self.img[cur];
            if nxt == NONE {
                break;
            }
            steps += 1;
            cur = nxt as usize;
            if cur == x {
                return steps == q;
            }
            if steps >= q {
                return false;
            }
        }
        // walk backwards to measure the whole open chain
        let mut cur = x;
        loop {
            let prv = self.pre[cur];
            if prv == NONE {
                break;
            }
            steps += 1;
            cur = prv as usize;
            if steps >= q {
                return false;
            }
        }
        true
    }
}

/// Bijections `σ: src_domain → dst_domain` such that every `src[k]`, relabeled
/// through `σ`, lies in `candidates[k]` (a list of permutations on
/// `dst_domain`). With `first_only` the search stops at the first hit.
pub(crate) fn relabelings(
    src_domain: &[Point],
    dst_domain: &[Point],
    src: &[Permutation],
    candidates: &[Vec<Permutation>],
    first_only: bool,
    limit: u64,
) -> (Vec<Vec<(Point, Point)>>, bool) {
    let sd = Dense::new(src_domain);
    let dd = Dense::new(dst_domain);
    if sd.len() != dd.len() {
        return (Vec::new(), true);
    }
    let n = sd.len();
    let src_d: Vec<Vec<u32>> = src
        .iter()
        .map(|s| sd.to_dense(s).expect("source leaves its domain"))
        .collect();
    let src_inv: Vec<Vec<u32>> = src_d.iter().map(|s| inverse(s)).collect();
    let src_len: Vec<Vec<u32>> = src_d.iter().map(|s| cycle_lengths(s)).collect();
    let mut targets: Vec<Vec<u32>> = Vec::new();
    let mut target_id: HashMap<Permutation, u32> = HashMap::new();
    let mut cands: Vec<Vec<u32>> = Vec::new();
    for (k, list) in candidates.iter().enumerate() {
        let want = src[k].cycle_type();
        let mut c = Vec::new();
        for t in list {
            if t.cycle_type() != want {
                continue;
            }
            let id = *target_id.entry(t.clone()).or_insert_with(|| {
                targets.push(dd.to_dense(t).expect("candidate leaves its domain"));
                (targets.len() - 1) as u32
            });
            c.push(id);
        }
        c.sort_unstable();
        c.dedup();
        if c.is_empty() {
            return (Vec::new(), true);
        }
        cands.push(c);
    }
    let target_len: Vec<Vec<u32>> = targets.iter().map(|t| cycle_lengths(t)).collect();
    let order = bfs_order(n, &src_d);
    let mut st = RelState {
        n,
        src: src_d,
        src_inv,
        src_len,
        targets,
        target_len,
        order,
        img: vec![NONE; n],
        pre: vec![NONE; n],
        trail: Vec::new(),
        out: Vec::new(),
        first_only,
        limit,
    };
    let done = st.run(cands);
    let out = st
        .out
        .into_iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .map(|(i, &j)| (sd.points[i], dd.points[j as usize]))
                .collect()
        })
        .collect();
    (out, done)
}

fn cycle_lengths(v: &[u32]) -> Vec<u32> {
    let mut len = vec![0u32; v.len()];
    for i in 0..v.len() {
        if len[i] != 0 {
            continue;
        }
        let mut cyc = vec![i];
        let mut j = v[i] as usize;
        while j != i {
            cyc.push(j);
            j = v[j] as usize;
        }
        for &c in &cyc {
            len[c] = cyc.len() as u32;
        }
    }
    len
}

/// Visit points so that each new point is adjacent to an earlier one under the
/// source permutations whenever possible.
fn bfs_order(n: usize, src: &[Vec<u32>]) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        order.push(start);
        let mut k = order.len() - 1;
        while k < order.len() {
            let x = order[k];
            k += 1;
            for s in src {
                let y = s[x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    order
}

struct RelState {
    n: usize,
    src: Vec<Vec<u32>>,
    src_inv: Vec<Vec<u32>>,
    src_len: Vec<Vec<u32>>,
    targets: Vec<Vec<u32>>,
    target_len: Vec<Vec<u32>>,
    order: Vec<usize>,
    img: Vec<u32>,
    pre: Vec<u32>,
    trail: Vec<usize>,
    out: Vec<Vec<u32>>,
    first_only: bool,
    limit: u64,
}

impl RelState {
    /// Returns false when the search should stop.
    fn run(&mut self, cands: Vec<Vec<u32>>) -> bool {
        let Some(&a) = self.order.iter().find(|&&i| self.img[i] == NONE) else {
            self.out.push(self.img.clone());
            return !self.first_only && (self.out.len() as u64) <= self.limit;
        };
        for b in 0..self.n {
            if self.pre[b] != NONE {
                continue;
            }
            let fits = (0..self.src.len()).all(|k| {
                let l = self.src_len[k][a];
                cands[k]
                    .iter()
                    .any(|&t| self.target_len[t as usize][b] == l)
            });
            if !fits {
                continue;
            }
            let mark = self.trail.len();
            let mut c = cands.clone();
            if self.assign(a, b, &mut c) && !self.run(c) {
                return false;
            }
            self.undo(mark);
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let i = self.trail.pop().unwrap();
            let j = self.img[i] as usize;
            self.img[i] = NONE;
            self.pre[j] = NONE;
        }
    }

    fn assign(&mut self, a: usize, b: usize, cands: &mut [Vec<u32>]) -> bool {
        let mut queue = vec![(a, b)];
        if self.pre[b] != NONE || self.img[a] != NONE {
            return false;
        }
        self.img[a] = b as u32;
        self.pre[b] = a as u32;
        self.trail.push(a);
        let mut k = 0;
        while k < queue.len() {
            let (x, y) = queue[k];
            k += 1;
            // `s` indexes src, src_inv and cands in step
            #[allow(clippy::needless_range_loop)]
            for s in 0..self.src.len() {
                let sx = self.src[s][x] as usize;
                let px = self.src_inv[s][x] as usize;
                {
                    let (img, targets) = (&self.img, &self.targets);
                    cands[s].retain(|&t| {
                        let t = &targets[t as usize];
                        (img[sx] == NONE || t[y] == img[sx])
                            && (img[px] == NONE || t[img[px] as usize] == y as u32)
                    });
                }
                if cands[s].is_empty() {
                    return false;
                }
                if cands[s].len() == 1 {
                    // a unique target forces the images along the source's action
                    let t = cands[s][0] as usize;
                    let mut forced = Vec::new();
                    for i in 0..self.n {
                        if self.img[i] != NONE {
                            let si = self.src[s][i] as usize;
                            let want = self.targets[t][self.img[i] as usize];
                            if self.img[si] == NONE {
                                forced.push((si, want as usize));
                            } else if self.img[si] != want {
                                return false;
                            }
                        }
                    }
                    for (u, v) in forced {
                        if self.img[u] != NONE {
                            if self.img[u] as usize != v {
                                return false;
                            }
                            continue;
                        }
                        if self.pre[v] != NONE {
                            return false;
                        }
                        self.img[u] = v as u32;
                        self.pre[v] = u as u32;
                        self.trail.push(u);
                        queue.push((u, v));
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    fn all_perms(n: u32) -> Vec<Permutation> {
        fn rec(pref: &mut Vec<u32>, left: &mut Vec<u32>, out: &mut Vec<Permutation>) {
            if left.is_empty() {
                out.push(Permutation::from_pairs((1..).zip(pref.iter().copied())).unwrap());
                return;
            }
            for k in 0..left.len() {
                let v = left.remove(k);
                pref.push(v);
                rec(pref, left, out);
                pref.pop();
                left.insert(k, v);
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
        out
    }

    #[test]
    fn commuting_matches_filter() {
        let dom: Vec<u32> = (1..=6).collect();
        let gens = vec![perm("(1 2)(3 4)(5 6)")];
        let (got, done) = commuting(&dom, &gens, None, u64::MAX);
        assert!(done);
        let want: Vec<_> = all_perms(6)
            .into_iter()
            .filter(|g| gens.iter().all(|s| s.commutes_with(g)))
            .collect();
        let mut got = got;
        got.sort();
        let mut want = want;
        want.sort();
        assert_eq!(got.len(), 48);
        assert_eq!(got, want);
    }

    #[test]
    fn commuting_regular_matches_filter() {
        let dom: Vec<u32> = (1..=6).collect();
        for gens in [
            vec![],
            vec![perm("(1 2)")],
            vec![perm("(1 2)(3 4)"), perm("(5 6)")],
        ] {
            let (mut got, _) = commuting(&dom, &gens, Some(2), u64::MAX);
            got.sort();
            let mut want: Vec<_> = all_perms(6)
                .into_iter()
                .filter(|g| g.is_q_regular(2, &dom) && gens.iter().all(|s| s.commutes_with(g)))
                .collect();
            want.sort();
            assert_eq!(got, want);
        }
        let (all3, _) = commuting(&dom, &[], Some(3), u64::MAX);
        assert_eq!(all3.len(), 40);
    }

    #[test]
    fn limit_stops_early() {
        let dom: Vec<u32> = (1..=6).collect();
        let (got, done) = commuting(&dom, &[], Some(2), 3);
        assert!(!done);
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn relabelings_match_filter() {
        let dom: Vec<u32> = (1..=5).collect();
        let x = vec![perm("(1 2)(3 4)"), perm("(1 3)(2 5)"), perm("(2 3 4)")];
        let (got, _) = relabelings(&dom, &dom, &x, &vec![x.clone(); 3], false, u64::MAX);
        let got: std::collections::BTreeSet<Permutation> = got
            .into_iter()
            .map(|m| Permutation::from_pairs(m).unwrap())
            .collect();
        let set: std::collections::HashSet<_> = x.iter().cloned().collect();
        let want: std::collections::BTreeSet<Permutation> = all_perms(5)
            .into_iter()
            .filter(|g| x.iter().all(|s| set.contains(&s.conjugate(g))))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn relabel_between_domains() {
        let (got, _) = relabelings(
            &[1, 2, 3, 4],
            &[5, 7, 9, 11],
            &[perm("(1 2)(3 4)")],
            &[vec![perm("(5 9)(7 11)")]],
            false,
            u64::MAX,
        );
        assert_eq!(got.len(), 8);
        for m in got {
            let f = |i: u32| m.iter().find(|&&(a, _)| a == i).unwrap().1;
            assert_eq!(perm("(1 2)(3 4)").relabel(f), perm("(5 9)(7 11)"));
        }
    }
}
