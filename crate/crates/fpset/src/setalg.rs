//! Finite sets of permutations under the disjoint-support product.
//!
//! `X * Y` shifts `Y` order-preservingly onto fresh points above `supp X`
//! and multiplies elementwise; `Δ^s X` is the diagonal of the `s`-fold
//! product. Two sets are equivalent when a relabeling of points carries one
//! onto the other.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::search::{relabelings, Dense};
use crate::group::{sym_set_stabilizer, GroupHandle};
use crate::perm::{CycleType, Permutation, Point};

/// A nonempty finite set of permutations other than `{()}`.
///
/// `{()}` itself is available as [`PermSet::unit`], the neutral element of
/// [`star`]; every other constructor rejects it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermSet {
    elements: Vec<Permutation>,
    support: Vec<Point>,
}

impl PermSet {
    pub fn new(elements: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let s = Self::build(elements.into_iter().collect());
        if s.elements.is_empty() {
            return Err(Error::InvalidInput("empty set".into()));
        }
        if s.is_unit() {
            return Err(Error::InvalidInput(
                "the set {()} is only the product unit".into(),
            ));
        }
        Ok(s)
    }

    pub fn unit() -> Self {
        Self::build(vec![Permutation::identity()])
    }

    fn build(mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut support: Vec<Point> = elements.iter().flat_map(|x| x.support()).collect();
        support.sort_unstable();
        support.dedup();
        PermSet { elements, support }
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_identity()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn support(&self) -> &[Point] {
        &self.support
    }

    /// `d(X) = |supp X|`.
    pub fn degree(&self) -> usize {
        self.support.len()
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn is_subset(&self, other: &PermSet) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    /// `X^g`.
    pub fn conjugate(&self, g: &Permutation) -> PermSet {
        Self::build(self.elements.iter().map(|x| x.conjugate(g)).collect())
    }

    pub fn relabel(&self, f: impl Fn(Point) -> Point) -> PermSet {
        Self::build(self.elements.iter().map(|x| x.relabel(&f)).collect())
    }

    /// `X` restricted to the given points, `{x|_α : x ∈ X}`.
    pub fn restrict(&self, points: &[Point]) -> PermSet {
        Self::build(self.elements.iter().map(|x| x.restrict(points)).collect())
    }

    /// The group `⟨X⟩` on `supp X`.
    pub fn generated_group(&self) -> GroupHandle {
        GroupHandle::new(&self.support, self.elements.clone())
            .expect("elements live on the support")
    }

    /// Orbits of `⟨X⟩` on `supp X`.
    pub fn orbits(&self) -> Vec<Vec<Point>> {
        self.generated_group().point_orbits(&self.support)
    }

    /// Sorted multiset of cycle types, an equivalence invariant.
    pub fn cycle_types(&self) -> Vec<CycleType> {
        let mut v: Vec<_> = self.elements.iter().map(|x| x.cycle_type()).collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for PermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{ ")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, " }}")
    }
}

impl fmt::Debug for PermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PermSet {
    type Err = Error;

    /// Parse `{ (1 2)(3 4), (1 3)(2 4) }`. Commas separate elements only
    /// outside parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse("a set is written {x, y, ...}".into()))?;
        let mut parts = Vec::new();
        let (mut depth, mut start) = (0i32, 0usize);
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push(&inner[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(&inner[start..]);
        if parts.len() == 1 && parts[0].trim().is_empty() {
            return Err(Error::Parse("empty set".into()));
        }
        let elems = parts
            .iter()
            .map(|p| p.trim().parse::<Permutation>())
            .collect::<Result<Vec<_>>>()?;
        PermSet::new(elems).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for PermSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Permutation>::deserialize(d)?;
        PermSet::new(v).map_err(serde::de::Error::custom)
    }
}

/// A set whose elements are all fixed-point-free products of `q`-cycles on
/// one common support.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SqSet {
    set: PermSet,
    q: usize,
}

impl SqSet {
    pub fn new(set: PermSet, q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidInput(format!("q = {q} must be at least 2")));
        }
        if set.is_unit() {
            return Err(Error::InvalidInput("{()} has no q-cycles".into()));
        }
        for x in set.elements() {
            if !x.is_q_regular(q, set.support()) {
                return Err(Error::InvalidInput(format!(
                    "{x} is not a fixed-point-free product of {q}-cycles on the support of the set"
                )));
            }
        }
        Ok(SqSet { set, q })
    }

    pub fn parse(s: &str, q: usize) -> Result<Self> {
        let set: PermSet = s.parse()?;
        SqSet::new(set, q).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn set(&self) -> &PermSet {
        &self.set
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn elements(&self) -> &[Permutation] {
        self.set.elements()
    }

    pub fn support(&self) -> &[Point] {
        self.set.support()
    }

    pub fn degree(&self) -> usize {
        self.set.degree()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// Rewrap a set known to consist of products of `q`-cycles.
    pub fn with_set(&self, set: PermSet) -> Result<SqSet> {
        SqSet::new(set, self.q)
    }

    pub fn star(&self, other: &SqSet) -> Result<SqSet> {
        if self.q != other.q {
            return Err(Error::InvalidInput("products need a common q".into()));
        }
        self.with_set(star(&self.set, &other.set))
    }

    pub fn delta(&self, s: usize) -> Result<SqSet> {
        self.with_set(delta(&self.set, s)?)
    }
}

impl fmt::Display for SqSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.set, f)
    }
}

#[derive(Serialize, Deserialize)]
struct SqSetJson {
    elements: Vec<Permutation>,
    q: usize,
}

impl Serialize for SqSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SqSetJson {
            elements: self.set.elements.clone(),
            q: self.q,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SqSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SqSetJson::deserialize(d)?;
        PermSet::new(j.elements)
            .and_then(|s| SqSet::new(s, j.q))
            .map_err(serde::de::Error::custom)
    }
}

/// Order-preserving map of `supp Y` onto `offset+1, offset+2, …`.
fn shift_onto(y: &PermSet, offset: Point) -> PermSet {
    let supp = y.support().to_vec();
    y.relabel(|a| match supp.binary_search(&a) {
        Ok(i) => offset + 1 + i as Point,
        Err(_) => a,
    })
}

fn top(x: &PermSet) -> Point {
    x.support().last().copied().unwrap_or(0)
}

/// `X * Y`: `Y` moved above `supp X`, then all products `x·y`.
pub fn star(x: &PermSet, y: &PermSet) -> PermSet {
    if y.is_unit() {
        return x.clone();
    }
    if x.is_unit() {
        return y.clone();
    }
    let y = shift_onto(y, top(x));
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x.elements() {
        for b in y.elements() {
            out.push(a.then(b));
        }
    }
    PermSet::build(out)
}

/// `X_1 * X_2 * ⋯`, associated to the left; the empty product is the unit.
pub fn star_all(xs: &[PermSet]) -> PermSet {
    xs.iter().fold(PermSet::unit(), |acc, x| star(&acc, x))
}

/// `Δ^s X`: `{x·x'·x''⋯}` where each copy sits above the previous one.
pub fn delta(x: &PermSet, s: usize) -> Result<PermSet> {
    if s == 0 {
        return Err(Error::InvalidInput(
            "diagonal exponent must be positive".into(),
        ));
    }
    let copies: Vec<PermSet> = {
        let mut v = vec![x.clone()];
        let mut offset = top(x);
        for _ in 1..s {
            v.push(shift_onto(x, offset));
            offset += x.degree() as Point;
        }
        v
    };
    let out = (0..x.len())
        .map(|i| {
            copies
                .iter()
                .fold(Permutation::identity(), |acc, c| acc.then(&c.elements()[i]))
        })
        .collect();
    // shifting preserves element order, so index i picks the same x in every copy
    Ok(PermSet::build(out))
}

fn check_support(x: &PermSet, caps: &Caps) -> Result<()> {
    if x.degree() > caps.support_cap {
        return Err(Error::cap("set support", caps.support_cap as u64));
    }
    Ok(())
}

/// A relabeling `σ` of `supp X` onto `supp Y` with `X^σ = Y`, if any.
pub fn equivalence_witness(x: &PermSet, y: &PermSet) -> Option<Permutation> {
    if x.len() != y.len() || x.degree() != y.degree() || x.cycle_types() != y.cycle_types() {
        return None;
    }
    if x.is_unit() {
        return Some(Permutation::identity());
    }
    let cands = vec![y.elements().to_vec(); x.len()];
    let (maps, _) = relabelings(x.support(), y.support(), x.elements(), &cands, true, 1);
    let map = maps.into_iter().next()?;
    // σ moves supp X onto supp Y; complete it to a permutation of the union
    let (src, dst): (Vec<Point>, Vec<Point>) = map.iter().copied().unzip();
    let src_set: HashSet<Point> = src.iter().copied().collect();
    let dst_set: HashSet<Point> = dst.iter().copied().collect();
    let free_src: Vec<Point> = dst
        .iter()
        .copied()
        .filter(|a| !src_set.contains(a))
        .collect();
    let free_dst: Vec<Point> = src
        .iter()
        .copied()
        .filter(|a| !dst_set.contains(a))
        .collect();
    let pairs = map.into_iter().chain(free_src.into_iter().zip(free_dst));
    Some(Permutation::from_pairs(pairs).expect("completed bijection"))
}

/// Whether some relabeling of points carries `X` onto `Y`.
pub fn equivalent(x: &PermSet, y: &PermSet, caps: &Caps) -> Result<bool> {
    check_support(x, caps)?;
    check_support(y, caps)?;
    Ok(equivalence_witness(x, y).is_some())
}

/// Largest search frontier tolerated by [`canonical_form`].
const FRONTIER_CAP: usize = 1 << 18;

/// A representative of the equivalence class of `X` on the points `1..=d`.
///
/// Points receive labels `1, 2, …` one at a time. After `k` labels, each
/// element is recorded as its row of images of labels `1..=k` (unlabeled
/// images count as larger than every label) and the sorted rows are compared
/// lexicographically; only minimal prefixes survive. The full labeling then
/// determines the set, so equal forms mean equivalent sets. Prefixes that
/// differ by an automorphism of `X` are merged.
pub fn canonical_form(x: &PermSet, caps: &Caps) -> Result<PermSet> {
    check_support(x, caps)?;
    if x.is_unit() {
        return Ok(x.clone());
    }
    let dense = Dense::new(x.support());
    let d = dense.len();
    let imgs: Vec<Vec<u32>> = x
        .elements()
        .iter()
        .map(|e| dense.to_dense(e).expect("element on support"))
        .collect();
    let aut: Option<Vec<Vec<u32>>> = sym_set_stabilizer(x.support(), x.elements(), caps.group_cap)
        .ok()
        .and_then(|g| g.enumerate(caps.group_cap).ok())
        .map(|els| {
            els.iter()
                .map(|g| dense.to_dense(g).expect("on support"))
                .collect()
        });

    const NONE: u32 = u32::MAX;
    struct Node {
        seq: Vec<u32>,
        label: Vec<u32>,
    }
    let rows_of = |node: &Node| -> Vec<Vec<u32>> {
        let k = node.seq.len();
        let mut rows: Vec<Vec<u32>> = imgs
            .iter()
            .map(|img| {
                (0..k)
                    .map(|i| node.label[img[node.seq[i] as usize] as usize])
                    .collect()
            })
            .collect();
        rows.sort_unstable();
        rows
    };
    let orbit_key = |seq: &[u32]| -> Vec<u32> {
        match &aut {
            Some(gs) => gs
                .iter()
                .map(|g| seq.iter().map(|&a| g[a as usize]).collect::<Vec<u32>>())
                .min()
                .expect("automorphism group contains the identity"),
            None => seq.to_vec(),
        }
    };

    let mut frontier = vec![Node {
        seq: Vec::new(),
        label: vec![NONE; d],
    }];
    for k in 0..d {
        let mut best: Option<Vec<Vec<u32>>> = None;
        let mut next: Vec<Node> = Vec::new();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for node in &frontier {
            for a in 0..d as u32 {
                if node.label[a as usize] != NONE {
                    continue;
                }
                let mut child = Node {
                    seq: node.seq.clone(),
                    label: node.label.clone(),
                };
                child.seq.push(a);
                child.label[a as usize] = k as u32;
                let rows = rows_of(&child);
                match &best {
                    Some(b) if rows > *b => continue,
                    Some(b) if rows < *b => {
                        next.clear();
                        seen.clear();
                        best = Some(rows);
                    }
                    None => best = Some(rows),
                    _ => {}
                }
                if seen.insert(orbit_key(&child.seq)) {
                    next.push(child);
                    if next.len() > FRONTIER_CAP {
                        return Err(Error::cap(
                            "canonical form search frontier",
                            FRONTIER_CAP as u64,
                        ));
                    }
                }
            }
        }
        frontier = next;
    }
    let node = &frontier[0];
    let out = imgs
        .iter()
        .map(|img| {
            let pairs = (0..d).map(|i| {
                let src = node.label[i] + 1;
                let dst = node.label[img[i] as usize] + 1;
                (src, dst)
            });
            Permutation::from_pairs(pairs).expect("relabeled element")
        })
        .collect();
    Ok(PermSet::build(out))
}

/// The irreducible factors of `X`, each on its own points inside `supp X`.
///
/// Every factor's support is a union of `⟨X⟩`-orbits, so the search runs
/// over bipartitions of the orbit list and recurses on both halves.
pub fn irreducible_factors(x: &PermSet, caps: &Caps) -> Result<Vec<PermSet>> {
    check_support(x, caps)?;
    if x.is_unit() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    factor_into(x, &mut out);
    out.sort_by_key(|f| f.support().first().copied());
    Ok(out)
}

fn factor_into(x: &PermSet, out: &mut Vec<PermSet>) {
    let blocks = x.orbits();
    let b = blocks.len();
    if b >= 2 {
        // block 0 always on the left; the mask picks the rest of the left side
        for mask in 0u64..(1u64 << (b - 1)) {
            if mask == (1u64 << (b - 1)) - 1 {
                continue;
            }
            let mut left: Vec<Point> = blocks[0].clone();
            let mut right: Vec<Point> = Vec::new();
            for (i, blk) in blocks.iter().enumerate().skip(1) {
                if mask >> (i - 1) & 1 == 1 {
                    left.extend(blk);
                } else {
                    right.extend(blk);
                }
            }
            left.sort_unstable();
            right.sort_unstable();
            let (xl, xr) = (x.restrict(&left), x.restrict(&right));
            // x ↦ (x|α, x|β) is injective, so the counts decide X = Xα × Xβ
            if xl.len() * xr.len() == x.len() {
                factor_into(&xl, out);
                factor_into(&xr, out);
                return;
            }
        }
    }
    out.push(x.clone());
}

pub fn is_irreducible(x: &PermSet, caps: &Caps) -> Result<bool> {
    Ok(irreducible_factors(x, caps)?.len() == 1)
}

/// Whether two lists agree as multisets up to equivalence.
pub fn same_up_to_equivalence(a: &[PermSet], b: &[PermSet], caps: &Caps) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    'outer: for x in a {
        for (j, y) in b.iter().enumerate() {
            if !used[j] && equivalent(x, y, caps)? {
                used[j] = true;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// No irreducible factor of `X` is equivalent to one of `Y`.
pub fn coprime(x: &SqSet, y: &SqSet, caps: &Caps) -> Result<bool> {
    let fx = irreducible_factors(x.set(), caps)?;
    let fy = irreducible_factors(y.set(), caps)?;
    for a in &fx {
        for b in &fy {
            if equivalent(a, b, caps)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Coprimality by its group-theoretic definition: `N_{X*Y} = N_X * N_Y`.
/// The right side always lies inside the left, so orders decide it.
pub fn coprime_by_normalizers(x: &SqSet, y: &SqSet, caps: &Caps) -> Result<bool> {
    let xy = x.star(y)?;
    let order = |s: &SqSet| -> Result<u64> {
        sym_set_stabilizer(s.support(), s.elements(), caps.group_cap)?.order(caps.group_cap)
    };
    Ok(order(&xy)? == order(x)? * order(y)?)
}

/// `⟨X⟩` is transitive on `supp X`.
pub fn is_transitive_set(x: &SqSet) -> bool {
    x.set().orbits().len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;
    use proptest::prelude::*;

    fn ps(s: &str) -> PermSet {
        s.parse().unwrap()
    }

    fn caps() -> Caps {
        Caps::default().sequential()
    }

    fn xi24() -> PermSet {
        ps("{(1 2)(3 4),(1 3)(2 4),(1 4)(2 3)}")
    }

    #[test]
    fn text_round_trip_and_errors() {
        let x = xi24();
        assert_eq!(x.to_string(), "{ (1 2)(3 4), (1 3)(2 4), (1 4)(2 3) }");
        assert_eq!(ps(&x.to_string()), x);
        assert_eq!(ps("{ (1,2)(3,4) }"), ps("{(1 2)(3 4)}"));
        assert!(matches!("{}".parse::<PermSet>(), Err(Error::Parse(_))));
        assert!(matches!("{()}".parse::<PermSet>(), Err(Error::Parse(_))));
        assert!(matches!("(1 2)".parse::<PermSet>(), Err(Error::Parse(_))));
        assert!(matches!("{(1 2}".parse::<PermSet>(), Err(Error::Parse(_))));
    }

    #[test]
    fn json_forms() {
        let x = SqSet::new(ps("{(1 2)}"), 2).unwrap();
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"elements":["(1 2)"],"q":2}"#);
        let back: SqSet = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<SqSet>(r#"{"elements":["(1 2 3)"],"q":2}"#).is_err());
    }

    #[test]
    fn sq_validation() {
        assert!(SqSet::new(ps("{(1 2)(3 4),(1 3)}"), 2).is_err());
        assert!(SqSet::new(ps("{(1 2 3)}"), 2).is_err());
        assert!(SqSet::new(ps("{(1 2 3),(1 3 2)}"), 3).is_ok());
    }

    #[test]
    fn star_examples() {
        let t = ps("{(1 2)}");
        assert_eq!(star(&t, &t), ps("{(1 2)(3 4)}"));
        assert_eq!(star(&t, &PermSet::unit()), t);
        assert_eq!(star(&PermSet::unit(), &t), t);
        let x = xi24();
        let xx = star(&x, &x);
        assert_eq!(xx.len(), 9);
        assert_eq!(xx.degree(), 8);
    }

    #[test]
    fn delta_examples() {
        let t = ps("{(1 2)}");
        assert_eq!(delta(&t, 2).unwrap(), ps("{(1 2)(3 4)}"));
        let d3 = delta(&xi24(), 3).unwrap();
        assert_eq!((d3.len(), d3.degree()), (3, 12));
        assert_eq!(delta(&xi24(), 1).unwrap(), xi24());
        assert!(delta(&t, 0).is_err());
        // each element is a triple of the same matching
        assert!(d3.contains(&perm("(1 2)(3 4)(5 6)(7 8)(9 10)(11 12)")));
    }

    #[test]
    fn equivalence_examples() {
        let c = caps();
        assert!(equivalent(&ps("{(1 2)(3 4)}"), &ps("{(1 3)(2 4)}"), &c).unwrap());
        assert!(equivalent(&xi24(), &xi24(), &c).unwrap());
        assert!(!equivalent(&ps("{(1 2)(3 4),(1 3)(2 4)}"), &ps("{(1 2)(3 4)}"), &c).unwrap());
        assert!(equivalent(&ps("{(5 9)}"), &ps("{(1 2)}"), &c).unwrap());
        let w = equivalence_witness(&ps("{(5 9)(6 7)}"), &ps("{(1 2)(3 4)}")).unwrap();
        assert_eq!(ps("{(5 9)(6 7)}").conjugate(&w), ps("{(1 2)(3 4)}"));
    }

    #[test]
    fn canonical_forms() {
        let c = caps();
        let a = canonical_form(&ps("{(1 2)(3 4)}"), &c).unwrap();
        let b = canonical_form(&ps("{(1 3)(2 4)}"), &c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.support(), &[1, 2, 3, 4]);
        let x = ps("{(1 2)(3 4),(1 3)(2 4)}");
        assert_ne!(canonical_form(&x, &c).unwrap(), a);
        assert!(equivalent(&canonical_form(&x, &c).unwrap(), &x, &c).unwrap());
    }

    #[test]
    fn factor_examples() {
        let c = caps();
        let f = irreducible_factors(&ps("{(1 2)(3 4)}"), &c).unwrap();
        assert_eq!(f, vec![ps("{(1 2)}"), ps("{(3 4)}")]);
        assert_eq!(irreducible_factors(&xi24(), &c).unwrap(), vec![xi24()]);
        // two orbits, but the set is not a product
        assert!(is_irreducible(&ps("{(1 2),(3 4)}"), &c).unwrap());
    }

    #[test]
    fn coprime_examples() {
        let c = caps();
        let t = SqSet::new(ps("{(1 2)}"), 2).unwrap();
        let x = SqSet::new(xi24(), 2).unwrap();
        assert!(coprime(&t, &x, &c).unwrap());
        assert!(!coprime(&x, &x, &c).unwrap());
        let t2 = SqSet::new(ps("{(3 4)}"), 2).unwrap();
        assert!(!coprime(&t, &t2, &c).unwrap());
        for (a, b) in [(&t, &x), (&x, &x), (&t, &t2)] {
            assert_eq!(
                coprime(a, b, &c).unwrap(),
                coprime_by_normalizers(a, b, &c).unwrap()
            );
        }
    }

    #[test]
    fn transitivity_examples() {
        assert!(is_transitive_set(&SqSet::new(xi24(), 2).unwrap()));
        assert!(!is_transitive_set(
            &SqSet::new(ps("{(1 2)(3 4)}"), 2).unwrap()
        ));
        assert!(is_transitive_set(&SqSet::new(ps("{(1 2)}"), 2).unwrap()));
    }

    #[test]
    fn support_cap_enforced() {
        let mut c = caps();
        c.support_cap = 3;
        assert!(matches!(
            canonical_form(&xi24(), &c),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            irreducible_factors(&xi24(), &c),
            Err(Error::CapExceeded { .. })
        ));
    }

    /// Small sets on `{1..d}` drawn from a fixed menu of elements.
    fn small_set() -> impl Strategy<Value = PermSet> {
        let menu = [
            "(1 2)",
            "(1 2 3)",
            "(1 3 2)",
            "(1 2)(3 4)",
            "(1 3)(2 4)",
            "(1 4)(2 3)",
            "(1 2 3 4)",
            "(2 3)",
            "(1 3)",
        ];
        proptest::sample::subsequence(menu.to_vec(), 1..=3)
            .prop_map(|v| PermSet::new(v.into_iter().map(perm)).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn star_commutative_associative(a in small_set(), b in small_set(), c in small_set()) {
            let caps = caps();
            prop_assert!(equivalent(&star(&a, &b), &star(&b, &a), &caps).unwrap());
            let l = star(&star(&a, &b), &c);
            let r = star(&a, &star(&b, &c));
            prop_assert!(equivalent(&l, &r, &caps).unwrap());
            prop_assert_eq!(l.degree(), a.degree() + b.degree() + c.degree());
            prop_assert_eq!(l.len(), a.len() * b.len() * c.len());
        }

        #[test]
        fn delta_degree_and_size(a in small_set(), s in 1usize..4) {
            let d = delta(&a, s).unwrap();
            prop_assert_eq!(d.degree(), s * a.degree());
            prop_assert_eq!(d.len(), a.len());
        }

        #[test]
        fn canonical_form_is_class_invariant(a in small_set(), shift in 0u32..5, swap in 1u32..4) {
            let caps = caps();
            let g = perm(&format!("({} {})", swap, swap + 1));
            let b = a.conjugate(&g).relabel(|x| x + shift);
            prop_assert_eq!(canonical_form(&a, &caps).unwrap(), canonical_form(&b, &caps).unwrap());
            prop_assert!(equivalent(&canonical_form(&a, &caps).unwrap(), &a, &caps).unwrap());
        }

        #[test]
        fn canonical_form_separates(a in small_set(), b in small_set()) {
            let caps = caps();
            let same = canonical_form(&a, &caps).unwrap() == canonical_form(&b, &caps).unwrap();
            prop_assert_eq!(same, equivalent(&a, &b, &caps).unwrap());
        }

        #[test]
        fn factors_multiply_back(a in small_set(), b in small_set()) {
            let caps = caps();
            let x = star(&a, &b);
            let f = irreducible_factors(&x, &caps).unwrap();
            prop_assert!(equivalent(&star_all(&f), &x, &caps).unwrap());
            for y in &f {
                prop_assert!(is_irreducible(y, &caps).unwrap());
            }
        }
    }
}
