//! Finitary permutations of the positive integers.
//!
//! Composition is left to right: `a.then(&b)` applies `a` first. Conjugation
//! is `x^g = g⁻¹ x g`, so `x.conjugate(&g)` relabels every cycle `(i …)` of
//! `x` as `(i^g …)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = u32;

/// A permutation stored by its moved points only.
///
/// `moved` is sorted by source point and never contains a fixed point, so
/// structural equality is permutation equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Permutation {
    moved: Vec<(Point, Point)>,
}

/// Multiset of cycle lengths (all ≥ 2), sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType(pub Vec<usize>);

impl CycleType {
    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { moved: Vec::new() }
    }

    /// Build from `(point, image)` pairs; pairs with `point == image` are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Point, Point)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            if a == 0 || b == 0 {
                return Err(Error::Parse("points are 1-based".into()));
            }
            if map.insert(a, b).is_some() {
                return Err(Error::Parse(format!("point {a} mapped twice")));
            }
        }
        let moved: Vec<_> = map.into_iter().filter(|(a, b)| a != b).collect();
        let mut images: Vec<Point> = moved.iter().map(|&(_, b)| b).collect();
        images.sort_unstable();
        if images.windows(2).any(|w| w[0] == w[1])
            || images.iter().zip(moved.iter()).any(|(b, &(a, _))| *b != a)
        {
            return Err(Error::Parse(
                "map is not a bijection of its moved points".into(),
            ));
        }
        Ok(Permutation { moved })
    }

    /// Build from disjoint cycles.
    pub fn from_cycles<C: AsRef<[Point]>>(cycles: &[C]) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for c in cycles {
            let c = c.as_ref();
            for &a in c {
                if !seen.insert(a) {
                    return Err(Error::Parse(format!("point {a} repeated")));
                }
            }
            for (k, &a) in c.iter().enumerate() {
                pairs.push((a, c[(k + 1) % c.len()]));
            }
        }
        Self::from_pairs(pairs)
    }

    /// Internal constructor for pairs already known to be a sorted bijection.
    pub(crate) fn from_sorted_unchecked(moved: Vec<(Point, Point)>) -> Self {
        debug_assert!(moved.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(moved.iter().all(|(a, b)| a != b));
        Permutation { moved }
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    pub fn moved_pairs(&self) -> &[(Point, Point)] {
        &self.moved
    }

    #[inline]
    pub fn apply(&self, i: Point) -> Point {
        match self.moved.binary_search_by_key(&i, |&(a, _)| a) {
            Ok(k) => self.moved[k].1,
            Err(_) => i,
        }
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        let mut out = Vec::with_capacity(self.moved.len() + other.moved.len());
        let (mut i, mut j) = (0, 0);
        while i < self.moved.len() || j < other.moved.len() {
            let a = match (self.moved.get(i), other.moved.get(j)) {
                (Some(&(x, _)), Some(&(y, _))) => x.min(y),
                (Some(&(x, _)), None) => x,
                (None, Some(&(y, _))) => y,
                (None, None) => unreachable!(),
            };
            let mid = if i < self.moved.len() && self.moved[i].0 == a {
                i += 1;
                self.moved[i - 1].1
            } else {
                a
            };
            if j < other.moved.len() && other.moved[j].0 == a {
                j += 1;
            }
            let b = other.apply(mid);
            if a != b {
                out.push((a, b));
            }
        }
        Permutation { moved: out }
    }

    pub fn inverse(&self) -> Permutation {
        let mut moved: Vec<_> = self.moved.iter().map(|&(a, b)| (b, a)).collect();
        moved.sort_unstable();
        Permutation { moved }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        if g.is_identity() {
            return self.clone();
        }
        let mut moved: Vec<_> = self
            .moved
            .iter()
            .map(|&(a, b)| (g.apply(a), g.apply(b)))
            .collect();
        moved.sort_unstable();
        Permutation { moved }
    }

    /// Relabel points through `f`, which must be injective on the support.
    pub fn relabel(&self, f: impl Fn(Point) -> Point) -> Permutation {
        let mut moved: Vec<_> = self.moved.iter().map(|&(a, b)| (f(a), f(b))).collect();
        moved.sort_unstable();
        Permutation { moved }
    }

    /// Keep only the action on `points`, which must be a union of cycles.
    pub fn restrict(&self, points: &[Point]) -> Permutation {
        let moved = self
            .moved
            .iter()
            .copied()
            .filter(|(a, _)| points.binary_search(a).is_ok())
            .collect();
        Permutation { moved }
    }

    pub fn support(&self) -> Vec<Point> {
        self.moved.iter().map(|&(a, _)| a).collect()
    }

    pub fn degree(&self) -> usize {
        self.moved.len()
    }

    /// Cycles in canonical order: each starts at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let mut done = std::collections::HashSet::new();
        let mut out = Vec::new();
        for &(a, _) in &self.moved {
            if done.contains(&a) {
                continue;
            }
            let mut cyc = vec![a];
            done.insert(a);
            let mut b = self.apply(a);
            while b != a {
                done.insert(b);
                cyc.push(b);
                b = self.apply(b);
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut v: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        v.sort_unstable();
        CycleType(v)
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Every cycle has length exactly `q` and the support is exactly `domain`.
    pub fn is_q_regular(&self, q: usize, domain: &[Point]) -> bool {
        let mut dom = domain.to_vec();
        dom.sort_unstable();
        dom.dedup();
        self.support() == dom && self.cycles().iter().all(|c| c.len() == q)
    }

    pub fn power(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.then(other) == other.then(self)
    }
}

pub fn compose(a: &Permutation, b: &Permutation) -> Permutation {
    a.then(b)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.moved.cmp(&other.moved)
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for c in self.cycles() {
            write!(f, "(")?;
            for (k, a) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parse cycle notation such as `(1 2)(3 4)`; `()` is the identity.
    /// Commas inside a cycle are accepted as separators.
    fn from_str(s: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<Point>> = Vec::new();
        let mut cur: Option<Vec<Point>> = None;
        let mut num = String::new();
        let flush = |num: &mut String, cur: &mut Option<Vec<Point>>| -> Result<()> {
            if num.is_empty() {
                return Ok(());
            }
            let v: Point = num
                .parse()
                .map_err(|_| Error::Parse(format!("bad point '{num}'")))?;
            num.clear();
            match cur {
                Some(c) => {
                    c.push(v);
                    Ok(())
                }
                None => Err(Error::Parse("point outside a cycle".into())),
            }
        };
        for ch in s.chars() {
            match ch {
                '(' => {
                    if cur.is_some() {
                        return Err(Error::Parse("nested '('".into()));
                    }
                    cur = Some(Vec::new());
                }
                ')' => {
                    flush(&mut num, &mut cur)?;
                    match cur.take() {
                        Some(c) => cycles.push(c),
                        None => return Err(Error::Parse("unmatched ')'".into())),
                    }
                }
                '0'..='9' => num.push(ch),
                ',' if cur.is_some() => flush(&mut num, &mut cur)?,
                c if c.is_whitespace() => flush(&mut num, &mut cur)?,
                c => return Err(Error::Parse(format!("unexpected character '{c}'"))),
            }
        }
        if cur.is_some() {
            return Err(Error::Parse("unclosed '('".into()));
        }
        if !num.is_empty() {
            return Err(Error::Parse("point outside a cycle".into()));
        }
        if cycles.is_empty() && !s.trim().is_empty() {
            return Err(Error::Parse("no cycles".into()));
        }
        if s.trim().is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        Permutation::from_cycles(&cycles)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout tests and examples. Panics on bad input.
pub fn perm(s: &str) -> Permutation {
    s.parse()
        .unwrap_or_else(|e| panic!("bad permutation literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn compose_left_to_right() {
        assert_eq!(perm("(1 2)").then(&perm("(2 3)")), perm("(1 3 2)"));
        assert_eq!(perm("(1 2)").then(&Permutation::identity()), perm("(1 2)"));
    }

    #[test]
    fn conjugate_relabels_cycles() {
        assert_eq!(perm("(1 2 3)").conjugate(&perm("(1 2)")), perm("(1 3 2)"));
        let x = perm("(1 5)(2 7 9)");
        assert_eq!(x.conjugate(&Permutation::identity()), x);
    }

    #[test]
    fn support_order_cycles() {
        assert_eq!(perm("(1 2)(3 4)").support(), vec![1, 2, 3, 4]);
        assert_eq!(perm("(1 2)(3 4 5)").order(), 6);
        assert!(Permutation::identity().cycles().is_empty());
    }

    #[test]
    fn q_regular() {
        assert!(perm("(1 2)(3 4)").is_q_regular(2, &[1, 2, 3, 4]));
        assert!(!perm("(1 2)").is_q_regular(2, &[1, 2, 3, 4]));
        assert!(!perm("(1 2 3)").is_q_regular(2, &[1, 2, 3]));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(perm("(4 3)( 2 1 )").to_string(), "(1 2)(3 4)");
        assert_eq!(perm("(3 1 2)").to_string(), "(1 2 3)");
        assert_eq!(perm("()").to_string(), "()");
        assert_eq!(perm("(1, 2)(5)").to_string(), "(1 2)");
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "(1 2",
            "1 2)",
            "(1 1)",
            "(1 2)(2 3)",
            "(0 1)",
            "(a b)",
            "",
            "((1))",
        ] {
            assert!(bad.parse::<Permutation>().is_err(), "{bad}");
        }
    }

    fn arb_perm(n: u32) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_pairs((1..).zip(v)).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_cancels(a in arb_perm(8)) {
            prop_assert!(a.then(&a.inverse()).is_identity());
            prop_assert_eq!(a.inverse().inverse(), a);
        }

        #[test]
        fn associative(a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)) {
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        }

        #[test]
        fn conjugation_is_an_action(x in arb_perm(7), g in arb_perm(7), h in arb_perm(7)) {
            prop_assert_eq!(x.conjugate(&g.then(&h)), x.conjugate(&g).conjugate(&h));
            prop_assert_eq!(x.conjugate(&g), g.inverse().then(&x).then(&g));
        }

        #[test]
        fn conjugation_preserves_cycle_type(x in arb_perm(9), g in arb_perm(9)) {
            prop_assert_eq!(x.conjugate(&g).cycle_type(), x.cycle_type());
        }

        #[test]
        fn support_of_product(a in arb_perm(6), b in arb_perm(6)) {
            let mut u = a.support();
            u.extend(b.support());
            for i in a.then(&b).support() {
                prop_assert!(u.contains(&i));
            }
        }

        #[test]
        fn text_round_trip(a in arb_perm(10)) {
            prop_assert_eq!(a.to_string().parse::<Permutation>().unwrap(), a);
        }
    }
}
