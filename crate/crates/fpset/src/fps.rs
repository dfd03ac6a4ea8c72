//! Closure, the fixed-point-set test, κ and the brute-force oracle.
//!
//! For a set `X` of fixed-point-free products of `q`-cycles on `Ω = supp X`,
//! with `G = Sym(Ω)` acting by conjugation on the class `Ξ` of all such
//! elements:
//! `S_X` is the centralizer of `X`, `Q_X` a Sylow `p`-subgroup of it,
//! `N_X` the set stabilizer and `M_X = N_X / S_X` its faithful image on `X`.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::exec;
use crate::group::search::commuting;
use crate::group::{
    factorial, is_power_of, p_part, subgroups_up_to_conjugacy, sylow_p, sylow_sym, sym_centralizer,
    sym_normalizer, sym_set_stabilizer, GroupHandle,
};
use crate::modlin::{
    check_prime, decompose_report, perm_module, wreath_power_module, DecompReport, GSet,
};
use crate::perm::{Permutation, Point};
use crate::setalg::{equivalent, PermSet, SqSet};

/// A yes/no answer that may be unknown when a decomposition could not be
/// certified. Serialized as `true`, `false` or `"unknown"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "true",
            Verdict::No => "false",
            Verdict::Unknown => "unknown",
        })
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Yes => s.serialize_bool(true),
            Verdict::No => s.serialize_bool(false),
            Verdict::Unknown => s.serialize_str("unknown"),
        }
    }
}

/// The conjugacy class of fixed-point-free products of `q`-cycles on a support.
#[derive(Clone, Debug)]
pub struct AmbientClass {
    pub q: usize,
    pub support: Vec<Point>,
    pub elements: Vec<Permutation>,
}

/// `d! / (q^{d/q} · (d/q)!)`.
pub fn class_size(d: usize, q: usize) -> u64 {
    if q == 0 || !d.is_multiple_of(q) {
        return 0;
    }
    let m = (d / q) as u64;
    factorial(d as u64) / ((q as u64).pow(m as u32) * factorial(m))
}

/// All fixed-point-free products of `q`-cycles on `support` commuting with
/// every element of `gens`.
pub fn fix_in_class(
    support: &[Point],
    q: usize,
    gens: &[Permutation],
    cap: u64,
) -> Result<Vec<Permutation>> {
    let (mut found, complete) = commuting(support, gens, Some(q), cap);
    if !complete {
        return Err(Error::cap("fixed point count", cap));
    }
    found.sort_unstable();
    Ok(found)
}

pub fn ambient(x: &SqSet, caps: &Caps) -> Result<AmbientClass> {
    if x.degree() > caps.support_cap.max(caps.oracle_max_degree) {
        return Err(Error::cap(
            "ambient class support",
            caps.support_cap.max(caps.oracle_max_degree) as u64,
        ));
    }
    Ok(AmbientClass {
        q: x.q(),
        support: x.support().to_vec(),
        elements: fix_in_class(x.support(), x.q(), &[], caps.group_cap)?,
    })
}

/// `S_X`, the centralizer of `X` in `Sym(supp X)`.
pub fn stab_s(x: &SqSet, caps: &Caps) -> Result<GroupHandle> {
    sym_centralizer(x.support(), x.elements(), caps.group_cap)
}

/// `Q_X`, a Sylow `p`-subgroup of `S_X`.
pub fn vertex_q(x: &SqSet, p: u32, caps: &Caps) -> Result<GroupHandle> {
    check_prime(p)?;
    sylow_p(&stab_s(x, caps)?, p, caps.group_cap, caps.exec)
}

/// `N_X`, the stabilizer of `X` under conjugation in `Sym(supp X)`.
pub fn normalizer_n(x: &SqSet, caps: &Caps) -> Result<GroupHandle> {
    sym_set_stabilizer(x.support(), x.elements(), caps.group_cap)
}

/// Image of `n` (a subgroup of `N_X`) acting on `X`, as permutations of the
/// positions `1..=|X|` in sorted element order.
pub fn action_on_set(x: &PermSet, n: &GroupHandle) -> Result<GroupHandle> {
    let index: HashMap<&Permutation, Point> = x
        .elements()
        .iter()
        .enumerate()
        .map(|(i, e)| (e, i as Point + 1))
        .collect();
    let mut gens = Vec::new();
    for g in n.generators() {
        let pairs = x
            .elements()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                index
                    .get(&e.conjugate(g))
                    .map(|&j| (i as Point + 1, j))
                    .ok_or_else(|| {
                        Error::ActionNotClosed(format!("{g} does not normalise the set"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        gens.push(Permutation::from_pairs(pairs)?);
    }
    let domain: Vec<Point> = (1..=x.len() as Point).collect();
    GroupHandle::new(&domain, gens)
}

/// `M_X` acting faithfully on `X`.
pub fn quotient_m(x: &SqSet, caps: &Caps) -> Result<GroupHandle> {
    action_on_set(x.set(), &normalizer_n(x, caps)?)
}

/// The permutation module `kX` of `M_X`.
pub fn set_module(x: &SqSet, m: &GroupHandle, p: u32) -> Result<crate::modlin::ModuleRep> {
    perm_module(m, &GSet::Points((1..=x.len() as Point).collect()), p)
}

/// `Fix_Ξ(Q_X)`.
pub fn closure(x: &SqSet, p: u32, caps: &Caps) -> Result<SqSet> {
    let q = vertex_q(x, p, caps)?;
    closure_under(x, &q, caps)
}

fn closure_under(x: &SqSet, q: &GroupHandle, caps: &Caps) -> Result<SqSet> {
    let fix = fix_in_class(x.support(), x.q(), q.generators(), caps.group_cap)?;
    x.with_set(PermSet::new(fix)?)
}

/// `Fix_Ξ(Q) = X`; the search stops as soon as it finds more than `|X|`.
fn closed_under(x: &SqSet, q: &GroupHandle) -> bool {
    let (_, complete) = commuting(x.support(), q.generators(), Some(x.q()), x.len() as u64);
    complete
}

pub fn is_closed(x: &SqSet, p: u32, caps: &Caps) -> Result<bool> {
    Ok(closed_under(x, &vertex_q(x, p, caps)?))
}

/// `Q_X` has no fixed point on `supp X`.
pub fn is_exact(x: &SqSet, p: u32, caps: &Caps) -> Result<bool> {
    Ok(vertex_q(x, p, caps)?.support() == x.support())
}

/// `Q_X = 1`.
pub fn is_projective_set(x: &SqSet, p: u32, caps: &Caps) -> Result<bool> {
    Ok(vertex_q(x, p, caps)?.is_trivial())
}

/// Result of the κ search: `(kX)^{≀u}` is tested for `u = 1, 2, …`.
#[derive(Clone, Debug, Serialize)]
pub struct Kappa {
    /// The first `u` without a projective summand, if one was reached.
    pub value: Option<usize>,
    /// Every `u` below this has a projective summand.
    pub lower_bound: usize,
    pub trajectory: Vec<KappaStep>,
    pub budget_exhausted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KappaStep {
    pub u: usize,
    pub dim: usize,
    pub projective_summand: Verdict,
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(v) => write!(f, "{v}"),
            None if self.budget_exhausted => write!(f, ">={}", self.lower_bound),
            None => write!(f, "unknown (>={})", self.lower_bound),
        }
    }
}

/// κ of the `M_X`-set `X`: the least `u` for which the wreath power
/// `(kX)^{≀u}` over `M_X ≀ Sym(u)` has no projective summand.
pub fn kappa(x: &SqSet, p: u32, caps: &Caps) -> Result<Kappa> {
    check_prime(p)?;
    let m = quotient_m(x, caps)?;
    kappa_of_module(&set_module(x, &m, p)?, caps)
}

pub fn kappa_of_module(base: &crate::modlin::ModuleRep, caps: &Caps) -> Result<Kappa> {
    let mut trajectory = Vec::new();
    let mut lower_bound = 1;
    for u in 1..=caps.kappa_max_u {
        let dim = (base.dim as u128).pow(u as u32);
        if dim > caps.kappa_max_dim as u128 {
            break;
        }
        // a group or dimension cap ends the search like the dimension budget
        let r = match wreath_power_module(base, u, caps).and_then(|w| decompose_report(&w, caps)) {
            Ok(r) => r,
            Err(Error::CapExceeded { .. }) => break,
            Err(e) => return Err(e),
        };
        let verdict = if r.np >= 1 {
            Verdict::Yes
        } else if r.inconclusive {
            Verdict::Unknown
        } else {
            Verdict::No
        };
        trajectory.push(KappaStep {
            u,
            dim: r.dim,
            projective_summand: verdict,
        });
        match verdict {
            Verdict::Yes => lower_bound = u + 1,
            Verdict::No => {
                return Ok(Kappa {
                    value: Some(u),
                    lower_bound,
                    trajectory,
                    budget_exhausted: false,
                })
            }
            Verdict::Unknown => {
                return Ok(Kappa {
                    value: None,
                    lower_bound,
                    trajectory,
                    budget_exhausted: false,
                })
            }
        }
    }
    Ok(Kappa {
        value: None,
        lower_bound,
        trajectory,
        budget_exhausted: true,
    })
}

/// Everything computed about one set.
#[derive(Clone, Debug, Serialize)]
pub struct FpsReport {
    pub set: SqSet,
    pub p: u32,
    pub q: usize,
    pub closed: bool,
    pub exact: bool,
    pub projective: bool,
    pub fixed_point_set: Verdict,
    #[serde(rename = "S_order")]
    pub s_order: u64,
    #[serde(rename = "N_order")]
    pub n_order: u64,
    #[serde(rename = "Q_gens")]
    pub q_gens: Vec<Permutation>,
    #[serde(rename = "M_order")]
    pub m_order: u64,
    pub np: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Kappa>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub module_summary: Option<DecompReport>,
    #[serde(skip)]
    pub q_order: u64,
}

/// Decide whether `X` is a fixed point set: closed, and `kX` over `M_X`
/// has a projective summand. An uncertified decomposition gives
/// [`Verdict::Unknown`].
pub fn is_fixed_point_set(x: &SqSet, p: u32, caps: &Caps) -> Result<FpsReport> {
    check_prime(p)?;
    let s = stab_s(x, caps)?;
    let s_order = s.order(caps.group_cap)?;
    let q = sylow_p(&s, p, caps.group_cap, caps.exec)?;
    let q_order = q.order(caps.group_cap)?;
    let n = normalizer_n(x, caps)?;
    let n_order = n.order(caps.group_cap)?;
    let m = action_on_set(x.set(), &n)?;
    let m_order = m.order(caps.group_cap)?;
    let closed = closed_under(x, &q);
    let mut notes = Vec::new();
    if m_order * s_order != n_order {
        return Err(Error::TheoremViolation(format!(
            "|M_X|·|S_X| = {}·{} differs from |N_X| = {n_order}",
            m_order, s_order
        )));
    }
    let (verdict, np, summary) = if closed {
        let r = decompose_report(&set_module(x, &m, p)?, caps)?;
        let v = if r.np >= 1 {
            Verdict::Yes
        } else if r.inconclusive {
            notes.push("decomposition of kX could not be certified".into());
            Verdict::Unknown
        } else {
            Verdict::No
        };
        let np = (!r.inconclusive).then_some(r.np);
        (v, np, Some(r))
    } else {
        let c = closure_under(x, &q, caps)?;
        notes.push(format!("not closed: closure has {} elements", c.len()));
        (Verdict::No, None, None)
    };
    Ok(FpsReport {
        set: x.clone(),
        p,
        q: x.q(),
        closed,
        exact: q.support() == x.support(),
        projective: q.is_trivial(),
        fixed_point_set: verdict,
        s_order,
        n_order,
        q_gens: q.generators().to_vec(),
        m_order,
        np,
        kappa: None,
        notes,
        module_summary: summary,
        q_order,
    })
}

impl FpsReport {
    /// Attach κ; only meaningful when `kX` has a projective summand.
    pub fn with_kappa(mut self, caps: &Caps) -> Result<Self> {
        self.kappa = Some(kappa(&self.set, self.p, caps)?);
        Ok(self)
    }

    /// Structural invariants every report must satisfy.
    pub fn check(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::TheoremViolation(format!("{}: {m}", self.set)));
        if !is_power_of(self.q_order, self.p as u64) || !self.s_order.is_multiple_of(self.q_order) {
            return fail("Q_X order is not a p-power dividing |S_X|");
        }
        if self.projective != self.q_gens.is_empty() {
            return fail("projective flag disagrees with Q_X");
        }
        if self.fixed_point_set.is_yes() && !self.closed {
            return fail("fixed point set that is not closed");
        }
        Ok(())
    }
}

/// The orbit factorization induced by `Q̃ = ⟨Q_X, X⟩`.
#[derive(Clone, Debug)]
pub struct QTilde {
    pub group: GroupHandle,
    pub orbits: Vec<Vec<Point>>,
    pub set_factors: Vec<PermSet>,
    pub q_factors: Vec<GroupHandle>,
}

/// For exact closed `X`: the orbits `λ_i` of `⟨Q_X, X⟩` split `X` and `Q_X`
/// as products of their restrictions. Any failure is a [`Error::TheoremViolation`].
pub fn q_tilde(x: &SqSet, p: u32, caps: &Caps) -> Result<QTilde> {
    let q = vertex_q(x, p, caps)?;
    if !closed_under(x, &q) || q.support() != x.support() {
        return Err(Error::InvalidInput(format!("{x} is not exact and closed")));
    }
    let mut gens = q.generators().to_vec();
    gens.extend(x.elements().iter().cloned());
    let group = GroupHandle::new(x.support(), gens)?;
    let orbits = group.point_orbits(x.support());
    let set_factors: Vec<PermSet> = orbits.iter().map(|o| x.set().restrict(o)).collect();
    let product: usize = set_factors.iter().map(|f| f.len()).product();
    if product != x.len() {
        return Err(Error::TheoremViolation(format!(
            "{x} is not the product of its restrictions to the orbits of ⟨Q_X, X⟩"
        )));
    }
    let q_factors: Vec<GroupHandle> = orbits
        .iter()
        .map(|o| {
            let gens = q.generators().iter().map(|g| g.restrict(o)).collect();
            GroupHandle::new(o, gens)
        })
        .collect::<Result<_>>()?;
    let mut qprod = 1u64;
    for f in &q_factors {
        qprod *= f.order(caps.group_cap)?;
    }
    if qprod != q.order(caps.group_cap)? {
        return Err(Error::TheoremViolation(format!(
            "Q_X of {x} is not the product of its restrictions to the orbits of ⟨Q_X, X⟩"
        )));
    }
    Ok(QTilde {
        group,
        orbits,
        set_factors,
        q_factors,
    })
}

/// Checks for a closed set `X`: `Fix_Ξ(S_X) = X` and `N_G(S_X) = N_X`; for
/// exact `X` also returns a central element of `Q_X` of order `p` without
/// fixed points on `supp X`.
pub fn closed_set_invariants(x: &SqSet, p: u32, caps: &Caps) -> Result<Option<Permutation>> {
    let s = stab_s(x, caps)?;
    let q = sylow_p(&s, p, caps.group_cap, caps.exec)?;
    if !closed_under(x, &q) {
        return Err(Error::InvalidInput(format!("{x} is not closed")));
    }
    let viol = |m: String| Error::TheoremViolation(format!("{x}: {m}"));
    let fix_s = fix_in_class(x.support(), x.q(), s.generators(), caps.group_cap)?;
    if fix_s != x.elements() {
        return Err(viol("Fix(S_X) differs from X".into()));
    }
    let n_s = sym_normalizer(x.support(), &s, caps.group_cap)?.order(caps.group_cap)?;
    let n_x = normalizer_n(x, caps)?.order(caps.group_cap)?;
    if n_s != n_x {
        return Err(viol(format!("|N_G(S_X)| = {n_s} but |N_X| = {n_x}")));
    }
    if q.support() != x.support() {
        return Ok(None);
    }
    let qs = q.enumerate(caps.group_cap)?;
    let witness = qs.iter().find(|z| {
        z.order() == p as u64
            && z.support() == x.support()
            && q.generators().iter().all(|g| g.commutes_with(z))
    });
    match witness {
        Some(z) => Ok(Some(z.clone())),
        None => Err(viol(
            "Q_X has no central fixed-point-free element of order p".into(),
        )),
    }
}

/// One subgroup class examined by the oracle.
#[derive(Clone, Debug, Serialize)]
pub struct OracleEntry {
    pub q_order: u64,
    pub q_gens: Vec<Permutation>,
    pub fix_size: usize,
    pub set: Option<SqSet>,
    #[serde(rename = "S_order")]
    pub s_order: Option<u64>,
    pub q_sylow_in_s: Option<bool>,
    #[serde(rename = "NQ_order")]
    pub nq_order: Option<u64>,
    pub np: Option<usize>,
    pub kept: Verdict,
}

/// `Σ np` over kept classes against the summand count of `kΞ`.
#[derive(Clone, Debug, Serialize)]
pub struct Ledger {
    pub class_dim: usize,
    pub total_summands: Option<usize>,
    pub sum_np: Option<usize>,
    pub holds: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleRun {
    pub p: u32,
    pub q: usize,
    pub n: usize,
    pub subgroup_classes: usize,
    pub entries: Vec<OracleEntry>,
    pub kept: Vec<FpsReport>,
    pub ledger: Ledger,
    pub notes: Vec<String>,
}

impl OracleRun {
    pub fn kept_sets(&self) -> Vec<SqSet> {
        self.kept.iter().map(|r| r.set.clone()).collect()
    }

    /// Some class could not be decided.
    pub fn has_unknowns(&self) -> bool {
        self.entries.iter().any(|e| e.kept == Verdict::Unknown)
    }
}

/// The definitional oracle on `Ξ^q_{qn}` inside `Sym(qn)` over `GF(p)`.
///
/// For each conjugacy class of `p`-subgroups `Q`, the set `X = Fix_Ξ(Q)` is
/// kept iff `kX` over `N(Q)/Q` has a projective summand. Every kept `Q` must
/// be Sylow in `S_X`, and kept sets must be pairwise inequivalent; either
/// failure is reported as [`Error::TheoremViolation`].
pub fn broue_oracle(p: u32, q: usize, n: usize, caps: &Caps) -> Result<OracleRun> {
    check_prime(p)?;
    if q < 2 || n == 0 {
        return Err(Error::InvalidInput("need q ≥ 2 and n ≥ 1".into()));
    }
    let deg = q * n;
    if deg > caps.oracle_max_degree {
        return Err(Error::cap(
            "oracle degree q·n",
            caps.oracle_max_degree as u64,
        ));
    }
    let domain: Vec<Point> = (1..=deg as Point).collect();
    let sym = GroupHandle::symmetric(&domain);
    let sylow = sylow_sym(deg as u32, p);
    let classes = subgroups_up_to_conjugacy(&sylow, &sym, caps.group_cap, caps.exec)?;
    let inner = Caps {
        exec: crate::config::Exec::Sequential,
        ..caps.clone()
    };
    let results = exec::map(caps.exec, &classes, |qg| examine(qg, &domain, p, q, &inner));
    let mut entries = Vec::new();
    for r in results {
        entries.push(r?);
    }

    let mut kept_sets: Vec<SqSet> = Vec::new();
    for e in &entries {
        if e.kept == Verdict::Yes {
            let x = e.set.clone().expect("kept entries have a set");
            if e.q_sylow_in_s != Some(true) {
                return Err(Error::TheoremViolation(format!(
                    "vertex of order {} is not Sylow in S_X for X = {x}",
                    e.q_order
                )));
            }
            for y in &kept_sets {
                if equivalent(x.set(), y.set(), &inner)? {
                    return Err(Error::TheoremViolation(format!(
                        "two subgroup classes give equivalent fixed point sets {x} and {y}"
                    )));
                }
            }
            kept_sets.push(x);
        }
    }
    let reports = exec::map(caps.exec, &kept_sets, |x| is_fixed_point_set(x, p, &inner));
    let mut kept = Vec::new();
    let mut notes = Vec::new();
    for r in reports {
        let r = r?;
        r.check()?;
        if r.fixed_point_set == Verdict::No {
            notes.push(format!(
                "{} is kept by the oracle but fails the closed-and-projective test",
                r.set
            ));
        }
        kept.push(r);
    }

    let ledger = ledger(p, q, &domain, &entries, caps)?;
    Ok(OracleRun {
        p,
        q,
        n,
        subgroup_classes: classes.len(),
        entries,
        kept,
        ledger,
        notes,
    })
}

fn examine(
    qg: &GroupHandle,
    domain: &[Point],
    p: u32,
    q: usize,
    caps: &Caps,
) -> Result<OracleEntry> {
    let q_order = qg.order(caps.group_cap)?;
    let fix = fix_in_class(domain, q, qg.generators(), caps.group_cap)?;
    let mut entry = OracleEntry {
        q_order,
        q_gens: qg.generators().to_vec(),
        fix_size: fix.len(),
        set: None,
        s_order: None,
        q_sylow_in_s: None,
        nq_order: None,
        np: None,
        kept: Verdict::No,
    };
    if fix.is_empty() {
        return Ok(entry);
    }
    let x = SqSet::new(PermSet::new(fix)?, q)?;
    let s_order = sym_centralizer(domain, x.elements(), caps.group_cap)?.order(caps.group_cap)?;
    let nq = sym_normalizer(domain, qg, caps.group_cap)?;
    let module = perm_module(&nq, &GSet::Conjugation(x.elements().to_vec()), p)?
        .with_kernel(qg.clone(), caps.group_cap)?;
    let r = decompose_report(&module, caps)?;
    entry.kept = if r.np >= 1 {
        Verdict::Yes
    } else if r.inconclusive {
        Verdict::Unknown
    } else {
        Verdict::No
    };
    entry.np = (!r.inconclusive).then_some(r.np);
    entry.s_order = Some(s_order);
    entry.q_sylow_in_s = Some(p_part(s_order, p as u64) == q_order);
    entry.nq_order = Some(nq.order(caps.group_cap)?);
    entry.set = Some(x);
    Ok(entry)
}

fn ledger(
    p: u32,
    q: usize,
    domain: &[Point],
    entries: &[OracleEntry],
    caps: &Caps,
) -> Result<Ledger> {
    let xi = fix_in_class(domain, q, &[], caps.group_cap)?;
    let class_dim = xi.len();
    let sum_np = if entries.iter().any(|e| e.kept == Verdict::Unknown) {
        None
    } else {
        Some(
            entries
                .iter()
                .filter(|e| e.kept.is_yes())
                .filter_map(|e| e.np)
                .sum(),
        )
    };
    let total = if class_dim > caps.dim_cap {
        None
    } else {
        let m = perm_module(&GroupHandle::symmetric(domain), &GSet::Conjugation(xi), p)?;
        let r = decompose_report(&m, caps)?;
        (!r.inconclusive).then_some(r.summands.len())
    };
    let holds = match (total, sum_np) {
        (Some(a), Some(b)) => Verdict::from_bool(a == b),
        _ => Verdict::Unknown,
    };
    Ok(Ledger {
        class_dim,
        total_summands: total,
        sum_np,
        holds,
    })
}
