//! Ground truth: feasibility by flow, exhaustive minimum solutions, the
//! violating-set hypergraph and an exact hitting-set solver.
//!
//! A set `S` is a vector connectivity set for `(G, r)` exactly when it meets
//! every connected `X` with `R(X) > |N(X)|`, where `R(X)` is the largest
//! requirement inside `X`. The sets in that family are what
//! [`violating_family`] enumerates; the acceptance tests check the
//! equivalence against [`is_feasible`] directly.

use crate::error::{Error, Result};
use crate::fans::{is_k_linked, linked_mask, CutWitness, Linkage};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::instance::Instance;

pub const DEFAULT_CAP: usize = 16;

/// Environment variable that overrides [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "VECCON_BRUTE_CAP";

/// Size limits for the exponential routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

/// Does every vertex outside `s` have a fan of order `r(v)` into `s ∪ F`?
pub fn is_feasible(inst: &Instance, s: &VertexSet) -> bool {
    let g = inst.graph();
    let mut in_s = vec![false; g.vertex_count()];
    for &v in s {
        if v >= in_s.len() {
            return false;
        }
        in_s[v] = true;
    }
    feasible_mask(inst, &in_s)
}

/// The smallest-id vertex outside `s` whose requirement is not met, with a
/// separator proving it.
pub fn first_violation(inst: &Instance, s: &VertexSet) -> Result<Option<(Vertex, CutWitness)>> {
    let g = inst.graph();
    g.check_set(s)?;
    let targets: VertexSet = s.union(inst.free()).copied().collect();
    for v in g.vertices() {
        if s.contains(&v) || inst.requirement(v) == 0 {
            continue;
        }
        if let Linkage::Separated(w) = is_k_linked(g, v, &targets, inst.requirement(v) as usize)? {
            return Ok(Some((v, w)));
        }
    }
    Ok(None)
}

pub(crate) fn feasible_mask(inst: &Instance, in_s: &[bool]) -> bool {
    let g = inst.graph();
    let mut targets = in_s.to_vec();
    for &f in inst.free() {
        targets[f] = true;
    }
    g.vertices()
        .filter(|&v| !in_s[v])
        .all(|v| linked_mask(g, v, &targets, inst.requirement(v) as usize))
}

/// Hypergraph of connected sets `X` with `R(X) > |N(X)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolatingFamily {
    pub sets: Vec<VertexSet>,
    pub minimal_only: bool,
}

impl ViolatingFamily {
    /// Does `s` meet every member?
    pub fn is_hit_by(&self, s: &VertexSet) -> bool {
        self.sets.iter().all(|x| !x.is_disjoint(s))
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Oracle { cap }
    }

    /// Reads the cap from `VECCON_BRUTE_CAP`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var(CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Oracle::with_cap)
            .unwrap_or_default()
    }

    fn check(&self, what: &'static str, size: usize) -> Result<()> {
        if size > self.cap {
            Err(Error::Size {
                what,
                size,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Minimum vector connectivity set by exhaustive search: sizes in
    /// increasing order, and within a size the lexicographically first
    /// feasible subset.
    pub fn brute_force_min(&self, inst: &Instance) -> Result<VertexSet> {
        let n = inst.vertex_count();
        self.check("brute_force_min", n)?;
        let forced = inst.forced_vertices();
        let mut in_s = vec![false; n];
        for size in forced.len()..=n {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                in_s.fill(false);
                for &v in &combo {
                    in_s[v] = true;
                }
                if forced.iter().all(|&f| in_s[f]) && feasible_mask(inst, &in_s) {
                    return Ok(combo.into_iter().collect());
                }
                if !next_combination(&mut combo, n) {
                    break;
                }
            }
        }
        unreachable!("the full vertex set is always feasible")
    }

    /// Enumerates every connected `X` with `R(X) > |N(X)|`, or only the
    /// inclusion-minimal ones. Only meaningful without free vertices.
    ///
    /// Such an `X` is a whole component of `G - N(X)` and its neighborhood
    /// has fewer than `max r` vertices, so it suffices to delete every
    /// candidate separator `Z` of that size and keep the components whose
    /// neighborhood is all of `Z`. The number of separators tried is capped
    /// at `2^cap`.
    pub fn violating_family(
        &self,
        g: &Graph,
        r: &[u32],
        minimal_only: bool,
    ) -> Result<ViolatingFamily> {
        let n = g.vertex_count();
        if r.len() != n {
            return Err(Error::input(format!(
                "{} requirements for {n} vertices",
                r.len()
            )));
        }
        let width = (r.iter().copied().max().unwrap_or(0) as usize)
            .saturating_sub(1)
            .min(n);
        let separators: u128 = (0..=width)
            .map(|k| binomial(n, k))
            .fold(0, u128::saturating_add);
        let budget = 1u128 << self.cap.min(100);
        if separators > budget {
            return Err(Error::Size {
                what: "violating_family separators",
                size: usize::try_from(separators).unwrap_or(usize::MAX),
                cap: usize::try_from(budget).unwrap_or(usize::MAX),
            });
        }

        let mut found = std::collections::BTreeSet::new();
        let mut removed = vec![false; n];
        let mut seen = vec![0usize; n];
        let mut stamp = 0;
        for k in 0..=width {
            let mut z: Vec<Vertex> = (0..k).collect();
            loop {
                for &u in &z {
                    removed[u] = true;
                }
                let base = stamp;
                for start in 0..n {
                    if removed[start] || seen[start] > base {
                        continue;
                    }
                    stamp += 1;
                    let comp = component(g, start, &removed, &mut seen, stamp);
                    let rmax = comp.iter().map(|&v| r[v]).max().unwrap_or(0) as usize;
                    if rmax > k
                        && z.iter()
                            .all(|&u| g.neighbors(u).iter().any(|w| seen[*w] == stamp))
                    {
                        found.insert(comp.into_iter().collect::<Vec<_>>());
                    }
                }
                for &u in &z {
                    removed[u] = false;
                }
                if !next_combination(&mut z, n) {
                    break;
                }
            }
        }

        let mut found: Vec<Vec<Vertex>> = found.into_iter().collect();
        found.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let mut sets: Vec<VertexSet> = Vec::with_capacity(found.len());
        for x in found {
            let x: VertexSet = x.into_iter().collect();
            if !minimal_only || sets.iter().all(|y| !y.is_subset(&x)) {
                sets.push(x);
            }
        }
        Ok(ViolatingFamily { sets, minimal_only })
    }
}

/// Vertices reachable from `start` avoiding `removed`, each marked with
/// `stamp` in `seen`.
fn component(
    g: &Graph,
    start: Vertex,
    removed: &[bool],
    seen: &mut [usize],
    stamp: usize,
) -> Vec<Vertex> {
    seen[start] = stamp;
    let mut comp = vec![start];
    let mut i = 0;
    while i < comp.len() {
        for &w in g.neighbors(comp[i]) {
            if !removed[w] && seen[w] != stamp {
                seen[w] = stamp;
                comp.push(w);
            }
        }
        i += 1;
    }
    comp.sort_unstable();
    comp
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

pub fn brute_force_min(inst: &Instance) -> Result<VertexSet> {
    Oracle::default().brute_force_min(inst)
}

pub fn violating_family(g: &Graph, r: &[u32], minimal_only: bool) -> Result<ViolatingFamily> {
    Oracle::default().violating_family(g, r, minimal_only)
}

/// Advances `combo` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exact minimum hitting set by branch and bound.
///
/// Branching is on the elements of an unhit set with the fewest usable
/// elements; element `i` of that set is taken in branch `i` and forbidden in
/// every later branch. A greedy packing of pairwise disjoint unhit sets gives
/// the lower bound, and a greedy cover seeds the incumbent.
pub fn min_hitting_set(fam: &ViolatingFamily, universe: &VertexSet) -> Result<VertexSet> {
    let elems: Vec<Vertex> = universe.iter().copied().collect();
    let index = |v: &Vertex| elems.binary_search(v).ok();
    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(fam.sets.len());
    for x in &fam.sets {
        if x.is_empty() {
            return Err(Error::input("the family contains the empty set"));
        }
        let local: Option<Vec<usize>> = x.iter().map(index).collect();
        let local =
            local.ok_or_else(|| Error::input(format!("set {x:?} is not inside the universe")))?;
        sets.push(local);
    }
    sets.sort();
    sets.dedup();

    let mut covers = vec![Vec::new(); elems.len()];
    for (i, x) in sets.iter().enumerate() {
        for &u in x {
            covers[u].push(i);
        }
    }

    let mut search = HittingSearch {
        sets: &sets,
        covers: &covers,
        hits: vec![0; sets.len()],
        chosen: Vec::new(),
        forbidden: vec![false; elems.len()],
        best: greedy_hitting(&sets, &covers, elems.len()),
    };
    search.run();
    Ok(search.best.iter().map(|&u| elems[u]).collect())
}

fn greedy_hitting(sets: &[Vec<usize>], covers: &[Vec<usize>], universe: usize) -> Vec<usize> {
    let mut hit = vec![false; sets.len()];
    let mut chosen = Vec::new();
    loop {
        let best = (0..universe)
            .map(|u| (covers[u].iter().filter(|&&s| !hit[s]).count(), u))
            .max_by_key(|&(c, u)| (c, std::cmp::Reverse(u)));
        match best {
            Some((c, u)) if c > 0 => {
                chosen.push(u);
                for &s in &covers[u] {
                    hit[s] = true;
                }
            }
            _ => break,
        }
    }
    chosen
}

struct HittingSearch<'a> {
    sets: &'a [Vec<usize>],
    covers: &'a [Vec<usize>],
    hits: Vec<usize>,
    chosen: Vec<usize>,
    forbidden: Vec<bool>,
    best: Vec<usize>,
}

impl HittingSearch<'_> {
    fn run(&mut self) {
        let unhit: Vec<usize> = (0..self.sets.len())
            .filter(|&s| self.hits[s] == 0)
            .collect();
        if unhit.is_empty() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + 1 >= self.best.len() {
            return;
        }

        let usable = |s: usize| self.sets[s].iter().filter(|&&u| !self.forbidden[u]).count();
        let mut order: Vec<(usize, usize)> = unhit.iter().map(|&s| (usable(s), s)).collect();
        order.sort_unstable();
        if order[0].0 == 0 {
            return;
        }

        let mut marked = vec![false; self.forbidden.len()];
        let mut packing = 0;
        for &(_, s) in &order {
            let free: Vec<usize> = self.sets[s]
                .iter()
                .copied()
                .filter(|&u| !self.forbidden[u])
                .collect();
            if free.iter().all(|&u| !marked[u]) {
                packing += 1;
                for u in free {
                    marked[u] = true;
                }
            }
        }
        if self.chosen.len() + packing >= self.best.len() {
            return;
        }

        let branch_set = order[0].1;
        let candidates: Vec<usize> = self.sets[branch_set]
            .iter()
            .copied()
            .filter(|&u| !self.forbidden[u])
            .collect();
        for &u in &candidates {
            self.chosen.push(u);
            for &s in &self.covers[u] {
                self.hits[s] += 1;
            }
            self.run();
            for &s in &self.covers[u] {
                self.hits[s] -= 1;
            }
            self.chosen.pop();
            self.forbidden[u] = true;
        }
        for &u in &candidates {
            self.forbidden[u] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_sorted(mut x: u64) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(x.count_ones() as usize);
        while x != 0 {
            out.push(x.trailing_zeros() as usize);
            x &= x - 1;
        }
        out
    }

    /// Calls `visit` once for every non-empty connected vertex set.
    ///
    /// Each set is grown from its smallest vertex (the seed) using only larger
    /// vertices; a candidate that has been branched on is excluded from the
    /// sibling branches that follow, so no set is produced twice.
    fn for_each_connected_set(adj: &[u64], mut visit: impl FnMut(u64)) {
        fn grow(
            adj: &[u64],
            allowed: u64,
            set: u64,
            cand: u64,
            excluded: u64,
            visit: &mut impl FnMut(u64),
        ) {
            visit(set);
            let mut excluded = excluded;
            let mut rest = cand;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let bit = 1u64 << w;
                let next = set | bit;
                let next_cand = (rest | (adj[w] & allowed)) & !next & !excluded;
                grow(adj, allowed, next, next_cand, excluded, visit);
                excluded |= bit;
            }
        }

        let n = adj.len();
        for seed in 0..n {
            let allowed = if seed + 1 >= 64 {
                0
            } else {
                !0u64 << (seed + 1)
            } & low_bits(n);
            let set = 1u64 << seed;
            grow(adj, allowed, set, adj[seed] & allowed, 0, &mut visit);
        }
    }

    fn low_bits(n: usize) -> u64 {
        if n >= 64 {
            !0
        } else {
            (1u64 << n) - 1
        }
    }

    fn set(vs: &[Vertex]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn feasibility_examples() {
        let p3 = Instance::uniform(Graph::path(3), 1);
        assert!(is_feasible(&p3, &set(&[1])));
        let k3 = Instance::uniform(Graph::complete(3), 2);
        assert!(!is_feasible(&k3, &set(&[0])));
        let zero = Instance::uniform(Graph::cycle(5).unwrap(), 0);
        assert!(is_feasible(&zero, &set(&[])));
    }

    #[test]
    fn violation_names_a_vertex_with_a_witness() {
        let k3 = Instance::uniform(Graph::complete(3), 2);
        let (v, w) = first_violation(&k3, &set(&[0])).unwrap().unwrap();
        assert_eq!(v, 1);
        w.validate(k3.graph(), v, &set(&[0]), 2).unwrap();
        assert!(first_violation(&k3, &set(&[0, 1])).unwrap().is_none());
    }

    #[test]
    fn brute_force_examples() {
        let k3 = Instance::uniform(Graph::complete(3), 2);
        assert_eq!(brute_force_min(&k3).unwrap(), set(&[0, 1]));
        let p3 = Instance::uniform(Graph::path(3), 1);
        assert_eq!(brute_force_min(&p3).unwrap(), set(&[0]));
        let zero = Instance::uniform(Graph::path(4), 0);
        assert!(brute_force_min(&zero).unwrap().is_empty());
    }

    #[test]
    fn brute_force_respects_cap() {
        let big = Instance::uniform(Graph::path(17), 1);
        assert!(matches!(brute_force_min(&big), Err(Error::Size { .. })));
        assert!(Oracle::with_cap(20).brute_force_min(&big).is_ok());
    }

    #[test]
    fn family_examples() {
        let p3 = Graph::path(3);
        let fam = violating_family(&p3, &[1, 1, 1], true).unwrap();
        assert_eq!(fam.sets, vec![set(&[0, 1, 2])]);

        let k2 = Graph::path(2);
        let fam = violating_family(&k2, &[2, 0], false).unwrap();
        assert!(fam.sets.contains(&set(&[0])));

        assert!(violating_family(&p3, &[0, 0, 0], false).unwrap().is_empty());
    }

    #[test]
    fn connected_set_enumeration_counts() {
        // every non-empty subset of K4 is connected
        let g = Graph::complete(4);
        let adj: Vec<u64> = g
            .vertices()
            .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | (1 << w)))
            .collect();
        let mut seen = Vec::new();
        for_each_connected_set(&adj, |x| seen.push(x));
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 15);

        // P4 has 4 + 3 + 2 + 1 connected sets (its subpaths)
        let g = Graph::path(4);
        let adj: Vec<u64> = g
            .vertices()
            .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | (1 << w)))
            .collect();
        let mut count = 0;
        for_each_connected_set(&adj, |_| count += 1);
        assert_eq!(count, 10);
    }

    fn exhaustive_family(g: &Graph, r: &[u32]) -> Vec<VertexSet> {
        let adj: Vec<u64> = g
            .vertices()
            .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | (1 << w)))
            .collect();
        let mut out = Vec::new();
        for_each_connected_set(&adj, |x| {
            let xs = to_sorted(x);
            let nb = xs.iter().fold(0u64, |m, &v| m | adj[v]) & !x;
            let rmax = xs.iter().map(|&v| r[v]).max().unwrap();
            if u64::from(rmax) > u64::from(nb.count_ones()) {
                out.push(xs.into_iter().collect());
            }
        });
        out.sort_by(|a: &VertexSet, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    #[test]
    fn separator_enumeration_matches_exhaustive() {
        use crate::generators::{gen_random_connected, gen_requirements};
        for seed in 0..60 {
            let g = gen_random_connected(7, 0.35, seed).unwrap();
            let inst = gen_requirements(&g, 4, seed, 0.0).unwrap();
            let fam = violating_family(&g, inst.requirements(), false).unwrap();
            assert_eq!(
                fam.sets,
                exhaustive_family(&g, inst.requirements()),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn hitting_set_examples() {
        let fam = ViolatingFamily {
            sets: vec![set(&[0, 1]), set(&[1, 2])],
            minimal_only: false,
        };
        assert_eq!(min_hitting_set(&fam, &set(&[0, 1, 2])).unwrap(), set(&[1]));
        let empty = ViolatingFamily {
            sets: vec![],
            minimal_only: true,
        };
        assert!(min_hitting_set(&empty, &set(&[0])).unwrap().is_empty());
        let outside = ViolatingFamily {
            sets: vec![set(&[5])],
            minimal_only: true,
        };
        assert!(min_hitting_set(&outside, &set(&[0])).is_err());
    }

    #[test]
    fn hitting_set_on_star_family() {
        let fam = ViolatingFamily {
            sets: vec![
                set(&[0, 1]),
                set(&[0, 2]),
                set(&[1, 3]),
                set(&[2, 4]),
                set(&[0, 5]),
                set(&[0, 6]),
            ],
            minimal_only: false,
        };
        let universe = (0..7).collect();
        let best = min_hitting_set(&fam, &universe).unwrap();
        assert!(fam.is_hit_by(&best));
        assert_eq!(best.len(), 3);
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}
