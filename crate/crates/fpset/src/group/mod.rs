//! Finite permutation groups at desk scale: enumeration, orbits,
//! centralizers, set stabilizers, Sylow subgroups and small subgroup lattices.

pub(crate) mod search;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use crate::config::Exec;
use crate::error::{Error, Result};
use crate::exec;
use crate::perm::{Permutation, Point};

/// A permutation group given by generators on a finite domain. Element lists
/// are computed on demand and shared between clones.
#[derive(Clone)]
pub struct GroupHandle {
    domain: Arc<Vec<Point>>,
    gens: Vec<Permutation>,
    elements: Arc<OnceLock<Arc<Vec<Permutation>>>>,
    lookup: Arc<OnceLock<Arc<HashSet<Permutation>>>>,
}

impl std::fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupHandle")
            .field("domain", &self.domain)
            .field("gens", &self.gens)
            .field("order", &self.elements.get().map(|e| e.len()))
            .finish()
    }
}

/// Which action `orbits` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    Points,
    Conjugation,
}

fn normalize_domain(domain: &[Point]) -> Vec<Point> {
    let mut d = domain.to_vec();
    d.sort_unstable();
    d.dedup();
    d
}

impl GroupHandle {
    pub fn new(domain: &[Point], gens: Vec<Permutation>) -> Result<Self> {
        let domain = normalize_domain(domain);
        for g in &gens {
            if g.support().iter().any(|p| domain.binary_search(p).is_err()) {
                return Err(Error::InvalidInput(format!(
                    "generator {g} moves points outside the domain"
                )));
            }
        }
        let gens = dedup_gens(gens);
        Ok(Self::raw(domain, gens))
    }

    fn raw(domain: Vec<Point>, gens: Vec<Permutation>) -> Self {
        GroupHandle {
            domain: Arc::new(domain),
            gens,
            elements: Arc::new(OnceLock::new()),
            lookup: Arc::new(OnceLock::new()),
        }
    }

    pub fn trivial(domain: &[Point]) -> Self {
        Self::raw(normalize_domain(domain), Vec::new())
    }

    pub fn symmetric(domain: &[Point]) -> Self {
        let d = normalize_domain(domain);
        let mut gens = Vec::new();
        if d.len() >= 2 {
            gens.push(Permutation::from_cycles(&[vec![d[0], d[1]]]).unwrap());
        }
        if d.len() >= 3 {
            gens.push(Permutation::from_cycles(std::slice::from_ref(&d)).unwrap());
        }
        Self::raw(d, gens)
    }

    /// Wrap a list already known to be a group. A small generating set is
    /// extracted greedily.
    pub fn from_elements(domain: &[Point], mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let set: HashSet<Permutation> = elements.iter().cloned().collect();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity()]);
        for x in &elements {
            if span.contains(x) {
                continue;
            }
            gens.push(x.clone());
            span = closure_set(&gens, usize::MAX).expect("uncapped");
            if span.len() == elements.len() {
                break;
            }
        }
        let h = Self::raw(normalize_domain(domain), gens);
        let _ = h.elements.set(Arc::new(elements));
        let _ = h.lookup.set(Arc::new(set));
        h
    }

    pub fn domain(&self) -> &[Point] {
        &self.domain
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Sorted element list; `CapExceeded` if the group has more than `cap` elements.
    pub fn enumerate(&self, cap: u64) -> Result<Arc<Vec<Permutation>>> {
        if let Some(e) = self.elements.get() {
            if e.len() as u64 > cap {
                return Err(Error::cap("group order", cap));
            }
            return Ok(e.clone());
        }
        let set = closure_set(&self.gens, cap.min(usize::MAX as u64) as usize)
            .ok_or_else(|| Error::cap("group order", cap))?;
        let mut v: Vec<Permutation> = set.iter().cloned().collect();
        v.sort();
        let _ = self.lookup.set(Arc::new(set));
        Ok(self.elements.get_or_init(|| Arc::new(v)).clone())
    }

    pub fn order(&self, cap: u64) -> Result<u64> {
        Ok(self.enumerate(cap)?.len() as u64)
    }

    pub fn contains(&self, x: &Permutation, cap: u64) -> Result<bool> {
        if let Some(s) = self.lookup.get() {
            return Ok(s.contains(x));
        }
        let e = self.enumerate(cap)?;
        let s = self
            .lookup
            .get_or_init(|| Arc::new(e.iter().cloned().collect()));
        Ok(s.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    /// The same group on a larger domain.
    pub fn with_domain(&self, domain: &[Point]) -> Result<Self> {
        let h = GroupHandle::new(domain, self.gens.clone())?;
        if let Some(e) = self.elements.get() {
            let _ = h.elements.set(e.clone());
        }
        if let Some(s) = self.lookup.get() {
            let _ = h.lookup.set(s.clone());
        }
        Ok(h)
    }

    /// Subgroup generated by the given elements (on this group's domain).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Self {
        Self::raw(self.domain.to_vec(), dedup_gens(gens))
    }

    /// Orbits on `points` under the point action. Points not in the domain are
    /// fixed and form singletons.
    pub fn point_orbits(&self, points: &[Point]) -> Vec<Vec<Point>> {
        orbits_by(points, |x| {
            self.gens.iter().map(|g| g.apply(*x)).collect::<Vec<_>>()
        })
    }

    /// Orbits on a set of permutations under conjugation.
    pub fn conjugation_orbits(&self, xs: &[Permutation]) -> Vec<Vec<Permutation>> {
        orbits_by(xs, |x| {
            self.gens.iter().map(|g| x.conjugate(g)).collect::<Vec<_>>()
        })
    }

    /// Orbits of every point of the domain.
    pub fn orbits(&self) -> Vec<Vec<Point>> {
        self.point_orbits(&self.domain)
    }

    pub fn is_p_group(&self, p: u32, cap: u64) -> Result<bool> {
        Ok(is_power_of(self.order(cap)?, p as u64))
    }

    /// Points moved by some generator.
    pub fn support(&self) -> Vec<Point> {
        let mut s: Vec<Point> = self.gens.iter().flat_map(|g| g.support()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn is_subgroup_of(&self, other: &GroupHandle, cap: u64) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g, cap)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether every element of `self` normalizes `h` (generators suffice).
    pub fn normalizes(&self, h: &GroupHandle, cap: u64) -> Result<bool> {
        for g in &self.gens {
            for x in h.generators() {
                if !h.contains(&x.conjugate(g), cap)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The subgroup conjugated by `g`.
    pub fn conjugate(&self, g: &Permutation) -> GroupHandle {
        let mut domain: Vec<Point> = self.domain.iter().map(|&p| g.apply(p)).collect();
        domain.sort_unstable();
        Self::raw(domain, self.gens.iter().map(|x| x.conjugate(g)).collect())
    }
}

fn dedup_gens(gens: Vec<Permutation>) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = Vec::new();
    for g in gens {
        if !g.is_identity() && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// Breadth-first closure; `None` if more than `cap` elements appear.
fn closure_set(gens: &[Permutation], cap: usize) -> Option<HashSet<Permutation>> {
    let mut seen: HashSet<Permutation> = HashSet::from([Permutation::identity()]);
    let mut queue = vec![Permutation::identity()];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k].clone();
        k += 1;
        for g in gens {
            let y = x.then(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return None;
                }
                seen.insert(y.clone());
                queue.push(y);
            }
        }
    }
    Some(seen)
}

fn orbits_by<T, F>(items: &[T], next: F) -> Vec<Vec<T>>
where
    T: Clone + Eq + std::hash::Hash + Ord,
    F: Fn(&T) -> Vec<T>,
{
    let mut seen: HashSet<T> = HashSet::new();
    let mut sorted = items.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out = Vec::new();
    for x in &sorted {
        if seen.contains(x) {
            continue;
        }
        seen.insert(x.clone());
        let mut orb = vec![x.clone()];
        let mut k = 0;
        while k < orb.len() {
            let y = orb[k].clone();
            k += 1;
            for z in next(&y) {
                if seen.insert(z.clone()) {
                    orb.push(z);
                }
            }
        }
        orb.sort();
        out.push(orb);
    }
    out
}

pub fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Orbit partition under the chosen action.
pub fn orbits_of_points(g: &GroupHandle, points: &[Point]) -> Vec<Vec<Point>> {
    g.point_orbits(points)
}

/// `{g ∈ G : s^g = s for all s ∈ S}` by filtering the elements of `G`.
pub fn centralizer(g: &GroupHandle, s: &[Permutation], cap: u64, ex: Exec) -> Result<GroupHandle> {
    let elems = g.enumerate(cap)?;
    let kept = exec::filter(ex, &elems, |h| s.iter().all(|x| x.commutes_with(h)));
    Ok(GroupHandle::from_elements(g.domain(), kept))
}

/// `{g ∈ G : X^g = X}` by filtering the elements of `G`.
pub fn set_stabilizer(
    g: &GroupHandle,
    x: &[Permutation],
    cap: u64,
    ex: Exec,
) -> Result<GroupHandle> {
    let elems = g.enumerate(cap)?;
    let set: HashSet<&Permutation> = x.iter().collect();
    let kept = exec::filter(ex, &elems, |h| {
        x.iter().all(|y| set.contains(&y.conjugate(h)))
    });
    Ok(GroupHandle::from_elements(g.domain(), kept))
}

/// `N_G(H)` by filtering the elements of `G`.
pub fn normalizer(g: &GroupHandle, h: &GroupHandle, cap: u64, ex: Exec) -> Result<GroupHandle> {
    let elems = g.enumerate(cap)?;
    let hs = h.enumerate(cap)?;
    let set: HashSet<&Permutation> = hs.iter().collect();
    let kept = exec::filter(ex, &elems, |x| {
        h.generators().iter().all(|y| set.contains(&y.conjugate(x)))
    });
    Ok(GroupHandle::from_elements(g.domain(), kept))
}

/// Centralizer of `s` in the full symmetric group on `domain`.
pub fn sym_centralizer(domain: &[Point], s: &[Permutation], cap: u64) -> Result<GroupHandle> {
    let (elems, done) = search::commuting(domain, s, None, cap);
    if !done {
        return Err(Error::cap("centralizer order", cap));
    }
    Ok(GroupHandle::from_elements(domain, elems))
}

/// Set stabilizer of `x` under conjugation in the full symmetric group on `domain`.
pub fn sym_set_stabilizer(domain: &[Point], x: &[Permutation], cap: u64) -> Result<GroupHandle> {
    let cands = vec![x.to_vec(); x.len()];
    let (maps, done) = search::relabelings(domain, domain, x, &cands, false, cap);
    if !done {
        return Err(Error::cap("set stabilizer order", cap));
    }
    let elems = maps
        .into_iter()
        .map(|m| Permutation::from_pairs(m).expect("bijection"))
        .collect();
    Ok(GroupHandle::from_elements(domain, elems))
}

/// Normalizer of `h` in the full symmetric group on `domain`.
pub fn sym_normalizer(domain: &[Point], h: &GroupHandle, cap: u64) -> Result<GroupHandle> {
    if h.is_trivial() {
        return Ok(GroupHandle::symmetric(domain));
    }
    let hs = h.enumerate(cap)?;
    let cands = vec![hs.to_vec(); h.generators().len()];
    let (maps, done) = search::relabelings(domain, domain, h.generators(), &cands, false, cap);
    if !done {
        return Err(Error::cap("normalizer order", cap));
    }
    let elems = maps
        .into_iter()
        .map(|m| Permutation::from_pairs(m).expect("bijection"))
        .collect();
    Ok(GroupHandle::from_elements(domain, elems))
}

/// A Sylow `p`-subgroup, grown from the first `p`-element by repeatedly
/// adjoining the first `p`-element of the normalizer not yet inside.
pub fn sylow_p(g: &GroupHandle, p: u32, cap: u64, ex: Exec) -> Result<GroupHandle> {
    let elems = g.enumerate(cap)?;
    let target = p_part(elems.len() as u64, p as u64);
    let is_p_elt = |x: &Permutation| !x.is_identity() && is_power_of(x.order(), p as u64);
    let mut cur = GroupHandle::trivial(g.domain());
    let mut order = 1u64;
    while order < target {
        let cur_elems = cur.enumerate(cap)?;
        let inside: HashSet<&Permutation> = cur_elems.iter().collect();
        let gens = cur.generators().to_vec();
        let candidates = exec::filter(ex, &elems, |x| {
            is_p_elt(x)
                && !inside.contains(x)
                && gens.iter().all(|y| inside.contains(&y.conjugate(x)))
        });
        let Some(h) = candidates.into_iter().next() else {
            return Err(Error::TheoremViolation(
                "p-subgroup below Sylow order has no p-element in its normalizer".into(),
            ));
        };
        let mut gens = gens;
        gens.push(h);
        cur = GroupHandle::new(g.domain(), gens)?;
        order = cur.order(cap)?;
    }
    Ok(cur)
}

/// The wreath-tower Sylow `p`-subgroup of `Sym({1..n})` built from the
/// base-`p` digits of `n`.
pub fn sylow_sym(n: u32, p: u32) -> GroupHandle {
    let domain: Vec<Point> = (1..=n).collect();
    let mut gens = Vec::new();
    let mut offset = 0u32;
    let mut digits = Vec::new();
    let mut m = n;
    while m > 0 {
        digits.push(m % p);
        m /= p;
    }
    for (k, &d) in digits.iter().enumerate().rev() {
        let block = p.pow(k as u32);
        for _ in 0..d {
            for level in 1..=k as u32 {
                let step = p.pow(level - 1);
                let span = p.pow(level);
                let pairs = (0..span).map(|x| (offset + x + 1, offset + (x + step) % span + 1));
                gens.push(Permutation::from_pairs(pairs).unwrap());
            }
            offset += block;
        }
    }
    GroupHandle::new(&domain, gens).expect("points in range")
}

/// Whether `h^g = k` for some `g` in `ambient`.
pub fn conjugate_in(
    h: &GroupHandle,
    k: &GroupHandle,
    ambient: &GroupHandle,
    cap: u64,
    ex: Exec,
) -> Result<bool> {
    let (hs, ks) = (h.enumerate(cap)?, k.enumerate(cap)?);
    if hs.len() != ks.len() {
        return Ok(false);
    }
    if h.is_trivial() {
        return Ok(true);
    }
    let kset: HashSet<&Permutation> = ks.iter().collect();
    if is_full_symmetric(ambient, cap)? {
        let cands = vec![ks.to_vec(); h.generators().len()];
        let dom = ambient.domain();
        let (maps, _) = search::relabelings(dom, dom, h.generators(), &cands, true, 1);
        return Ok(!maps.is_empty());
    }
    let elems = ambient.enumerate(cap)?;
    let hits = exec::filter(ex, &elems, |g| {
        h.generators()
            .iter()
            .all(|x| kset.contains(&x.conjugate(g)))
    });
    Ok(!hits.is_empty())
}

fn is_full_symmetric(g: &GroupHandle, cap: u64) -> Result<bool> {
    let n = g.domain().len() as u64;
    if n > 20 {
        return Ok(false);
    }
    let f = factorial(n);
    if f > cap {
        // Cannot confirm by counting; symmetric handles built by `symmetric`
        // have exactly the two standard generators.
        return Ok(*g.generators() == GroupHandle::symmetric(g.domain()).gens);
    }
    Ok(g.order(cap)? == f)
}

/// Subgroup of a small group, keyed by a bitset over the parent's sorted elements.
#[derive(Clone)]
struct Sub {
    bits: Vec<u64>,
    gens: Vec<Permutation>,
}

/// One representative per `ambient`-conjugacy class of subgroups of the
/// `p`-group `p_group`, found by growing every subgroup one normal step
/// of index `p` at a time.
pub fn subgroups_up_to_conjugacy(
    p_group: &GroupHandle,
    ambient: &GroupHandle,
    cap: u64,
    ex: Exec,
) -> Result<Vec<GroupHandle>> {
    let elems = p_group.enumerate(cap)?;
    let order = elems.len() as u64;
    let p = (2..=order).find(|d| order.is_multiple_of(*d)).unwrap_or(1);
    if order > 1 && !is_power_of(order, p) {
        return Err(Error::NotPGroup { order, p: p as u32 });
    }
    let index: HashMap<&Permutation, usize> =
        elems.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let words = elems.len().div_ceil(64);
    let bits_of = |set: &[Permutation]| -> Vec<u64> {
        let mut b = vec![0u64; words];
        for x in set {
            let k = index[x];
            b[k / 64] |= 1 << (k % 64);
        }
        b
    };
    let has = |b: &[u64], x: &Permutation| -> bool {
        let k = index[x];
        b[k / 64] >> (k % 64) & 1 == 1
    };

    let trivial = Sub {
        bits: bits_of(&[Permutation::identity()]),
        gens: Vec::new(),
    };
    let mut all = vec![trivial.clone()];
    let mut level = vec![trivial];
    while !level.is_empty() {
        let grown: Vec<Vec<Sub>> = exec::map(ex, &level, |h| {
            let mut found: Vec<Sub> = Vec::new();
            let mut seen: HashSet<Vec<u64>> = HashSet::new();
            for g in elems.iter() {
                if has(&h.bits, g) || !has(&h.bits, &g.power(p)) {
                    continue;
                }
                if !h.gens.iter().all(|y| has(&h.bits, &y.conjugate(g))) {
                    continue;
                }
                let mut gens = h.gens.clone();
                gens.push(g.clone());
                let set: Vec<Permutation> = closure_set(&gens, usize::MAX)
                    .unwrap()
                    .into_iter()
                    .collect();
                let bits = bits_of(&set);
                if seen.insert(bits.clone()) {
                    found.push(Sub { bits, gens });
                }
            }
            found
        });
        let mut next: Vec<Sub> = Vec::new();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        for s in grown.into_iter().flatten() {
            if seen.insert(s.bits.clone()) {
                next.push(s);
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }

    let dom = p_group.domain().to_vec();
    let handles: Vec<GroupHandle> = all
        .into_iter()
        .map(|s| {
            let members: Vec<Permutation> =
                elems.iter().filter(|x| has(&s.bits, x)).cloned().collect();
            let h = GroupHandle::raw(dom.clone(), s.gens);
            let _ = h.elements.set(Arc::new(members));
            h
        })
        .collect();

    // bucket by a conjugation invariant, then test conjugacy inside buckets
    let keys = exec::map(ex, &handles, subgroup_invariant);
    let mut buckets: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (k, key) in keys.into_iter().enumerate() {
        buckets.entry(key).or_default().push(k);
    }
    let bucket_list: Vec<Vec<usize>> = buckets.into_values().collect();
    let reps: Vec<Result<Vec<usize>>> = exec::map(ex, &bucket_list, |members| {
        let mut reps: Vec<usize> = Vec::new();
        for &m in members {
            let mut new = true;
            for &r in &reps {
                if conjugate_in(&handles[m], &handles[r], ambient, cap, Exec::Sequential)? {
                    new = false;
                    break;
                }
            }
            if new {
                reps.push(m);
            }
        }
        Ok(reps)
    });
    let mut keep: Vec<usize> = Vec::new();
    for r in reps {
        keep.extend(r?);
    }
    keep.sort_unstable();
    Ok(keep.into_iter().map(|k| handles[k].clone()).collect())
}

fn subgroup_invariant(
    h: &GroupHandle,
) -> (usize, Vec<(crate::perm::CycleType, usize)>, Vec<usize>) {
    let elems = h.elements.get().expect("enumerated");
    let mut types: BTreeMap<crate::perm::CycleType, usize> = BTreeMap::new();
    for x in elems.iter() {
        *types.entry(x.cycle_type()).or_default() += 1;
    }
    let mut orbit_sizes: Vec<usize> = h.orbits().iter().map(Vec::len).collect();
    orbit_sizes.sort_unstable();
    (elems.len(), types.into_iter().collect(), orbit_sizes)
}

/// Every subgroup of a small group by brute force over subsets generated by
/// pairs of elements and their joins. Used as an independent check.
pub fn all_subgroups_bruteforce(g: &GroupHandle, cap: u64) -> Result<Vec<Vec<Permutation>>> {
    let elems = g.enumerate(cap)?;
    let mut found: HashSet<Vec<Permutation>> = HashSet::new();
    let mut frontier: Vec<Vec<Permutation>> = vec![vec![Permutation::identity()]];
    found.insert(frontier[0].clone());
    while let Some(h) = frontier.pop() {
        for x in elems.iter() {
            if h.binary_search(x).is_ok() {
                continue;
            }
            let mut gens: Vec<Permutation> = h.clone();
            gens.push(x.clone());
            let mut k: Vec<Permutation> = closure_set(&gens, usize::MAX)
                .unwrap()
                .into_iter()
                .collect();
            k.sort();
            if found.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    let mut out: Vec<_> = found.into_iter().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    const CAP: u64 = 1_000_000;
    const EX: Exec = Exec::Sequential;

    fn sym(n: u32) -> GroupHandle {
        GroupHandle::symmetric(&(1..=n).collect::<Vec<_>>())
    }

    #[test]
    fn enumerate_sizes() {
        let s4 = GroupHandle::new(&[1, 2, 3, 4], vec![perm("(1 2)"), perm("(1 2 3 4)")]).unwrap();
        assert_eq!(s4.order(CAP).unwrap(), 24);
        assert_eq!(
            GroupHandle::trivial(&[1, 2])
                .enumerate(CAP)
                .unwrap()
                .as_slice(),
            &[Permutation::identity()]
        );
        assert!(matches!(
            sym(10).enumerate(CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn element_order_is_deterministic() {
        let a = sym(4).enumerate(CAP).unwrap();
        let b = GroupHandle::new(&[1, 2, 3, 4], vec![perm("(1 2 3 4)"), perm("(3 4)")])
            .unwrap()
            .enumerate(CAP)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn centralizer_examples() {
        let c = centralizer(&sym(6), &[perm("(1 2)(3 4)(5 6)")], CAP, EX).unwrap();
        assert_eq!(c.order(CAP).unwrap(), 48);
        let c = centralizer(&sym(4), &[perm("(1 2)(3 4)"), perm("(1 3)(2 4)")], CAP, EX).unwrap();
        assert_eq!(c.order(CAP).unwrap(), 4);
        let c = centralizer(&sym(4), &[Permutation::identity()], CAP, EX).unwrap();
        assert_eq!(c.order(CAP).unwrap(), 24);
    }

    #[test]
    fn set_stabilizer_examples() {
        let xi = [perm("(1 2)(3 4)"), perm("(1 3)(2 4)"), perm("(1 4)(2 3)")];
        assert_eq!(
            set_stabilizer(&sym(4), &xi, CAP, EX)
                .unwrap()
                .order(CAP)
                .unwrap(),
            24
        );
        let n = set_stabilizer(&sym(4), &[perm("(1 2)(3 4)")], CAP, EX).unwrap();
        assert_eq!(n.order(CAP).unwrap(), 8);
        let c = centralizer(&sym(4), &[perm("(1 2)(3 4)")], CAP, EX).unwrap();
        assert!(c.is_subgroup_of(&n, CAP).unwrap());
    }

    #[test]
    fn sym_searches_agree_with_filters() {
        let dom: Vec<u32> = (1..=6).collect();
        let s6 = sym(6);
        for x in [
            vec![perm("(1 2)(3 4)(5 6)")],
            vec![perm("(1 2)(3 4)(5 6)"), perm("(1 3)(2 4)(5 6)")],
            vec![perm("(1 2 3)(4 5 6)"), perm("(1 3 2)(4 6 5)")],
        ] {
            let a = centralizer(&s6, &x, CAP, EX)
                .unwrap()
                .enumerate(CAP)
                .unwrap();
            let b = sym_centralizer(&dom, &x, CAP)
                .unwrap()
                .enumerate(CAP)
                .unwrap();
            assert_eq!(a, b);
            let a = set_stabilizer(&s6, &x, CAP, EX)
                .unwrap()
                .enumerate(CAP)
                .unwrap();
            let b = sym_set_stabilizer(&dom, &x, CAP)
                .unwrap()
                .enumerate(CAP)
                .unwrap();
            assert_eq!(a, b);
        }
        let q = GroupHandle::new(&dom, vec![perm("(1 2)(3 4)"), perm("(5 6)")]).unwrap();
        let a = normalizer(&s6, &q, CAP, EX)
            .unwrap()
            .enumerate(CAP)
            .unwrap();
        let b = sym_normalizer(&dom, &q, CAP)
            .unwrap()
            .enumerate(CAP)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(sylow_p(&sym(4), 2, CAP, EX).unwrap().order(CAP).unwrap(), 8);
        assert_eq!(sylow_p(&sym(4), 3, CAP, EX).unwrap().order(CAP).unwrap(), 3);
        assert!(sylow_p(&GroupHandle::trivial(&[1]), 2, CAP, EX)
            .unwrap()
            .is_trivial());
        for n in 1..=8u32 {
            let s = sym(n);
            let full = s.order(CAP).unwrap();
            for p in [2u32, 3, 5, 7] {
                let a = sylow_p(&s, p, CAP, EX).unwrap();
                assert_eq!(a.order(CAP).unwrap(), p_part(full, p as u64));
                assert!(a.is_subgroup_of(&s, CAP).unwrap());
                assert_eq!(
                    sylow_sym(n, p).order(CAP).unwrap(),
                    p_part(full, p as u64),
                    "n={n} p={p}"
                );
            }
        }
        assert_eq!(sylow_sym(9, 3).order(CAP).unwrap(), 81);
        assert_eq!(sylow_sym(6, 2).order(CAP).unwrap(), 16);
    }

    #[test]
    fn orbit_examples() {
        let g = GroupHandle::new(&[1, 2, 3, 4], vec![perm("(1 2)(3 4)")]).unwrap();
        assert_eq!(g.orbits(), vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(
            GroupHandle::trivial(&[1, 2]).orbits(),
            vec![vec![1], vec![2]]
        );
        let v = GroupHandle::new(
            &[1, 2, 3, 4],
            vec![perm("(1 2)(3 4)"), perm("(1 3)(2 4)"), perm("(1 4)(2 3)")],
        )
        .unwrap();
        assert_eq!(v.orbits(), vec![vec![1, 2, 3, 4]]);
        let xi = [perm("(1 2)(3 4)"), perm("(1 3)(2 4)"), perm("(1 4)(2 3)")];
        assert_eq!(sym(4).conjugation_orbits(&xi).len(), 1);
    }

    #[test]
    fn orbit_stabilizer() {
        let s5 = sym(5);
        let order = s5.order(CAP).unwrap();
        for x in [perm("(1 2)"), perm("(1 2)(3 4)"), perm("(1 2 3)(4 5)")] {
            let orbit = &s5.conjugation_orbits(std::slice::from_ref(&x))[0];
            let stab = centralizer(&s5, &[x], CAP, EX).unwrap().order(CAP).unwrap();
            assert_eq!(orbit.len() as u64 * stab, order);
        }
    }

    #[test]
    fn subgroup_classes_small() {
        let c2 = GroupHandle::new(&[1, 2], vec![perm("(1 2)")]).unwrap();
        let reps = subgroups_up_to_conjugacy(&c2, &sym(2), CAP, EX).unwrap();
        assert_eq!(reps.len(), 2);
        let v4 = GroupHandle::new(&[1, 2, 3, 4], vec![perm("(1 2)"), perm("(3 4)")]).unwrap();
        let reps = subgroups_up_to_conjugacy(&v4, &sym(4), CAP, EX).unwrap();
        // 1, <(1 2)>, <(1 2)(3 4)>, V4 (the two transposition subgroups merge)
        assert_eq!(reps.len(), 4);
    }

    #[test]
    fn subgroup_classes_match_bruteforce() {
        for (n, p) in [(4u32, 2u32), (6, 2), (6, 3)] {
            let ambient = sym(n);
            let syl = sylow_sym(n, p);
            let reps = subgroups_up_to_conjugacy(&syl, &ambient, CAP, EX).unwrap();
            let all = all_subgroups_bruteforce(&syl, CAP).unwrap();
            // independent class count: orbits of all subgroups under ambient conjugation
            let amb = ambient.enumerate(CAP).unwrap();
            let mut classes: Vec<Vec<Permutation>> = Vec::new();
            for h in &all {
                let seen = classes.iter().any(|c| {
                    c.len() == h.len()
                        && amb.iter().any(|g| {
                            let mut hc: Vec<_> = h.iter().map(|x| x.conjugate(g)).collect();
                            hc.sort();
                            &hc == c
                        })
                });
                if !seen {
                    classes.push(h.clone());
                }
            }
            assert_eq!(reps.len(), classes.len(), "n={n} p={p}");
        }
    }
}
