//! Constructive classification of fixed point sets for prime `q`, and its
//! comparison against the brute-force oracle.
//!
//! Transitive candidates are built explicitly, diagonals `Δ^{p^i}` of the
//! verified exact ones give the irreducible exact list, products of
//! pairwise inequivalent entries with exponents below κ give the
//! projective-free list, and each of those may be multiplied by one full
//! class that is a projective fixed point set. Every emitted set is
//! re-verified with [`is_fixed_point_set`].

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::config::{Caps, Exec};
use crate::error::{Error, Result};
use crate::exec;
use crate::fps::{
    broue_oracle, fix_in_class, is_fixed_point_set, kappa, FpsReport, Kappa, Ledger, Verdict,
};
use crate::group::{sym_centralizer, GroupHandle};
use crate::perm::{Permutation, Point};
use crate::setalg::{equivalent, is_irreducible, is_transitive_set, PermSet, SqSet};

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn check_primes(p: u32, q: usize) -> Result<()> {
    if !is_prime(p as usize) {
        return Err(Error::InvalidInput(format!("p = {p} is not prime")));
    }
    if !is_prime(q) {
        return Err(Error::InvalidInput(format!("q = {q} is not prime")));
    }
    Ok(())
}

/// Per-instance check of the claims about elements `y` that commute with
/// `x` and permute its cycles transitively.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionT {
    pub x: Permutation,
    pub y: Permutation,
    /// Number of such `y` in the class.
    pub count: usize,
    /// All of them are conjugate under `C_x`.
    pub all_conjugate_in_cx: bool,
    /// The centralizer of `y` in `C_x` is `⟨x, y⟩`.
    pub stabilizer_is_xy: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub name: String,
    pub construction: String,
    pub degree: usize,
    pub transitive: bool,
    pub irreducible: bool,
    pub report: FpsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_t: Option<ConditionT>,
}

impl Candidate {
    fn set(&self) -> &SqSet {
        &self.report.set
    }

    /// Verified, transitive, irreducible and exact.
    pub fn usable(&self) -> bool {
        self.report.fixed_point_set.is_yes()
            && self.report.exact
            && self.transitive
            && self.irreducible
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub form: String,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Kappa>,
    pub report: FpsReport,
}

impl Entry {
    pub fn set(&self) -> &SqSet {
        &self.report.set
    }
}

/// A predicted set whose re-verification did not confirm it.
#[derive(Clone, Debug, Serialize)]
pub struct Rejected {
    pub form: String,
    pub set: SqSet,
    pub fixed_point_set: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub p: u32,
    pub q: usize,
    pub max_degree: usize,
    pub transitive_candidates: Vec<Candidate>,
    pub irreducible_exact: Vec<Entry>,
    pub projective_free: Vec<Entry>,
    pub projective_irreducible: Vec<Entry>,
    pub all: Vec<Entry>,
    pub rejected: Vec<Rejected>,
    pub notes: Vec<String>,
}

fn inner(caps: &Caps) -> Caps {
    Caps {
        exec: Exec::Sequential,
        ..caps.clone()
    }
}

/// Points `a_ij = (i−1)q + j`; `x` has the rows as `q`-cycles and `z` the
/// columns as `p`-cycles.
fn grid(p: usize, q: usize) -> (Permutation, Permutation) {
    let a = |i: usize, j: usize| ((i - 1) * q + j) as Point;
    let rows: Vec<Vec<Point>> = (1..=p)
        .map(|i| (1..=q).map(|j| a(i, j)).collect())
        .collect();
    let cols: Vec<Vec<Point>> = (1..=q)
        .map(|j| (1..=p).map(|i| a(i, j)).collect())
        .collect();
    (
        Permutation::from_cycles(&rows).expect("disjoint rows"),
        Permutation::from_cycles(&cols).expect("disjoint columns"),
    )
}

fn fix_set(domain: &[Point], q: usize, gens: &[Permutation], caps: &Caps) -> Result<Option<SqSet>> {
    let fix = fix_in_class(domain, q, gens, caps.group_cap)?;
    if fix.is_empty() {
        return Ok(None);
    }
    Ok(Some(SqSet::new(PermSet::new(fix)?, q)?))
}

/// `y` in the class, commuting with `x` and transitive on the cycles of `x`.
fn condition_t(x: &Permutation, p: usize, caps: &Caps) -> Result<Option<ConditionT>> {
    let domain: Vec<Point> = (1..=(p * p) as Point).collect();
    let cycles = x.cycles();
    let block_of = |a: Point| {
        cycles
            .iter()
            .position(|c| c.contains(&a))
            .expect("x is fixed-point-free")
    };
    let commuting = fix_in_class(&domain, p, std::slice::from_ref(x), caps.group_cap)?;
    let ys: Vec<Permutation> = commuting
        .into_iter()
        .filter(|y| {
            let mut b = 0usize;
            let mut seen = vec![false; cycles.len()];
            for _ in 0..cycles.len() {
                seen[b] = true;
                b = block_of(y.apply(cycles[b][0]));
            }
            seen.iter().all(|&s| s)
        })
        .collect();
    let Some(y) = ys.first().cloned() else {
        return Ok(None);
    };
    let cx = sym_centralizer(&domain, std::slice::from_ref(x), caps.group_cap)?;
    let cx_elems = cx.enumerate(caps.group_cap)?;
    let orbit: std::collections::HashSet<Permutation> =
        cx_elems.iter().map(|g| y.conjugate(g)).collect();
    let all_conjugate = ys.iter().all(|z| orbit.contains(z));
    let stab: Vec<Permutation> = cx_elems
        .iter()
        .filter(|g| g.commutes_with(&y))
        .cloned()
        .collect();
    let xy = GroupHandle::new(&domain, vec![x.clone(), y.clone()])?;
    let xy_elems = xy.enumerate(caps.group_cap)?;
    let stabilizer_is_xy =
        stab.len() == xy_elems.len() && stab.iter().all(|g| xy_elems.binary_search(g).is_ok());
    Ok(Some(ConditionT {
        x: x.clone(),
        y,
        count: ys.len(),
        all_conjugate_in_cx: all_conjugate,
        stabilizer_is_xy,
    }))
}

/// The explicit candidates for transitive fixed point sets of degree `q`
/// and `pq`, each verified; candidates above `max_degree` are skipped.
pub fn transitive_candidates(
    p: u32,
    q: usize,
    max_degree: usize,
    caps: &Caps,
) -> Result<Vec<Candidate>> {
    check_primes(p, q)?;
    let pu = p as usize;
    let ic = inner(caps);
    let mut raw: Vec<(String, SqSet, Option<ConditionT>)> = Vec::new();
    if q <= max_degree {
        let domain: Vec<Point> = (1..=q as Point).collect();
        if let Some(x) = fix_set(&domain, q, &[], &ic)? {
            raw.push((format!("all {q}-cycles of Sym({q})"), x, None));
        }
        if pu == q {
            let c = Permutation::from_cycles(std::slice::from_ref(&domain))?;
            if let Some(x) = fix_set(&domain, q, std::slice::from_ref(&c), &ic)? {
                raw.push((format!("Fix(<{c}>)"), x, None));
            }
        }
    }
    if pu * q <= max_degree {
        let domain: Vec<Point> = (1..=(pu * q) as Point).collect();
        let (x, z) = grid(pu, q);
        if pu != q {
            if let Some(s) = fix_set(&domain, q, std::slice::from_ref(&z), &ic)? {
                raw.push((format!("Fix(<{z}>)"), s, None));
            }
        } else {
            if let Some(s) = fix_set(&domain, q, std::slice::from_ref(&x), &ic)? {
                raw.push((format!("Fix(<{x}>)"), s, None));
            }
            if let Some(t) = condition_t(&x, pu, &ic)? {
                if let Some(s) = fix_set(&domain, q, &[x.clone(), t.y.clone()], &ic)? {
                    raw.push((format!("Fix(<{x}, {}>)", t.y), s, Some(t)));
                }
            }
        }
    }
    let verified = exec::map(
        caps.exec,
        &raw,
        |(_, x, _)| -> Result<(FpsReport, bool, bool)> {
            Ok((
                is_fixed_point_set(x, p, &ic)?,
                is_transitive_set(x),
                is_irreducible(x.set(), &ic)?,
            ))
        },
    );
    let mut out: Vec<Candidate> = Vec::new();
    for ((construction, x, t), v) in raw.into_iter().zip(verified) {
        let (report, transitive, irreducible) = v?;
        report.check()?;
        out.push(Candidate {
            name: format!("T{}", out.len() + 1),
            construction,
            degree: x.degree(),
            transitive,
            irreducible,
            report,
            condition_t: t,
        });
    }
    Ok(out)
}

/// Push `x` unless an equivalent set is already present.
fn is_new(list: &[SqSet], x: &SqSet, caps: &Caps) -> Result<bool> {
    for y in list {
        if equivalent(x.set(), y.set(), caps)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn verify_all(
    forms: Vec<(String, SqSet)>,
    p: u32,
    caps: &Caps,
    prefix: &str,
    rejected: &mut Vec<Rejected>,
) -> Result<Vec<Entry>> {
    let ic = inner(caps);
    let reports = exec::map(caps.exec, &forms, |(_, x)| is_fixed_point_set(x, p, &ic));
    let mut out = Vec::new();
    for ((form, x), r) in forms.into_iter().zip(reports) {
        let r = r?;
        r.check()?;
        if r.fixed_point_set.is_yes() {
            out.push(Entry {
                name: format!("{prefix}{}", out.len() + 1),
                form,
                degree: x.degree(),
                kappa: None,
                report: r,
            });
        } else {
            rejected.push(Rejected {
                form,
                set: x,
                fixed_point_set: r.fixed_point_set,
            });
        }
    }
    Ok(out)
}

/// `Δ^{p^i} Y` for every verified transitive irreducible exact `Y`.
pub fn irreducible_exact_fps(
    p: u32,
    max_degree: usize,
    candidates: &[Candidate],
    caps: &Caps,
    rejected: &mut Vec<Rejected>,
) -> Result<Vec<Entry>> {
    let ic = inner(caps);
    let mut seen: Vec<SqSet> = Vec::new();
    let mut forms = Vec::new();
    for c in candidates.iter().filter(|c| c.usable()) {
        let mut s = 1usize;
        while s * c.degree <= max_degree {
            let x = c.set().delta(s)?;
            if is_new(&seen, &x, &ic)? {
                seen.push(x.clone());
                let form = if s == 1 {
                    c.name.clone()
                } else {
                    format!("D^{s} {}", c.name)
                };
                forms.push((form, x));
            }
            s *= p as usize;
        }
    }
    let mut out = verify_all(forms, p, caps, "E", rejected)?;
    for e in &mut out {
        let mut kc = ic.clone();
        kc.kappa_max_u = kc.kappa_max_u.min((max_degree / e.degree).max(1));
        e.kappa = Some(kappa(e.set(), p, &kc)?);
    }
    Ok(out)
}

/// Largest exponent allowed for an entry: below κ and within the degree.
fn max_exponent(e: &Entry, max_degree: usize) -> usize {
    let by_degree = max_degree / e.degree;
    let by_kappa = match &e.kappa {
        Some(k) => match k.value {
            Some(v) => v - 1,
            None => k.lower_bound - 1,
        },
        None => 1,
    };
    by_degree.min(by_kappa)
}

fn star_power(x: &SqSet, a: usize) -> Result<SqSet> {
    let mut out = x.clone();
    for _ in 1..a {
        out = out.star(x)?;
    }
    Ok(out)
}

/// Products `E_1^{a_1} * ⋯` of pairwise inequivalent irreducible exact
/// entries with `1 ≤ a_i < κ(E_i)`, within `max_degree`.
pub fn projective_free_fps(
    p: u32,
    max_degree: usize,
    irreducible: &[Entry],
    caps: &Caps,
    rejected: &mut Vec<Rejected>,
    notes: &mut Vec<String>,
) -> Result<Vec<Entry>> {
    let ic = inner(caps);
    for e in irreducible {
        if let Some(k) = &e.kappa {
            if k.value.is_none() && k.lower_bound <= max_degree / e.degree {
                notes.push(format!(
                    "κ({}) is only known to be at least {}; larger exponents were not tried",
                    e.name, k.lower_bound
                ));
            }
        }
    }
    let mut combos: Vec<Vec<(usize, usize)>> = Vec::new();
    fn rec(
        i: usize,
        left: usize,
        cur: &mut Vec<(usize, usize)>,
        irr: &[Entry],
        max_degree: usize,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if i == irr.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        rec(i + 1, left, cur, irr, max_degree, out);
        for a in 1..=max_exponent(&irr[i], max_degree) {
            if a * irr[i].degree > left {
                break;
            }
            cur.push((i, a));
            rec(i + 1, left - a * irr[i].degree, cur, irr, max_degree, out);
            cur.pop();
        }
    }
    rec(
        0,
        max_degree,
        &mut Vec::new(),
        irreducible,
        max_degree,
        &mut combos,
    );
    let mut seen: Vec<SqSet> = Vec::new();
    let mut forms = Vec::new();
    for combo in combos {
        let mut set: Option<SqSet> = None;
        let mut parts = Vec::new();
        for &(i, a) in &combo {
            let pw = star_power(irreducible[i].set(), a)?;
            set = Some(match set {
                Some(s) => s.star(&pw)?,
                None => pw,
            });
            parts.push(if a == 1 {
                irreducible[i].name.clone()
            } else {
                format!("{}^{a}", irreducible[i].name)
            });
        }
        let x = set.expect("nonempty combination");
        if is_new(&seen, &x, &ic)? {
            seen.push(x.clone());
            forms.push((parts.join(" * "), x));
        }
    }
    verify_all(forms, p, caps, "W", rejected)
}

/// Full classes `Ξ^q_{qn}` that are projective fixed point sets. Classes
/// failing the test are simply not listed.
pub fn projective_irreducible_fps(
    p: u32,
    q: usize,
    max_degree: usize,
    caps: &Caps,
) -> Result<Vec<Entry>> {
    let ic = inner(caps);
    let mut forms = Vec::new();
    for n in 1..=max_degree / q {
        let domain: Vec<Point> = (1..=(q * n) as Point).collect();
        if let Some(x) = fix_set(&domain, q, &[], &ic)? {
            forms.push((format!("Xi^{q}_{}", q * n), x));
        }
    }
    let mut out: Vec<Entry> = verify_all(forms, p, caps, "V", &mut Vec::new())?
        .into_iter()
        .filter(|e| e.report.projective)
        .collect();
    for (i, e) in out.iter_mut().enumerate() {
        e.name = format!("V{}", i + 1);
    }
    Ok(out)
}

/// Every fixed point set of degree at most `max_degree` predicted by the
/// classification: `W`, `V` and `W * V`.
pub fn all_fps(p: u32, q: usize, max_degree: usize, caps: &Caps) -> Result<ClassificationReport> {
    check_primes(p, q)?;
    let ic = inner(caps);
    let mut rejected = Vec::new();
    let mut notes = Vec::new();
    let transitive = transitive_candidates(p, q, max_degree, caps)?;
    for c in &transitive {
        if let Some(t) = &c.condition_t {
            if !t.all_conjugate_in_cx || !t.stabilizer_is_xy {
                notes.push(format!(
                    "condition (T) claims fail for x = {}: conjugate {}, stabilizer {}",
                    t.x, t.all_conjugate_in_cx, t.stabilizer_is_xy
                ));
            }
        }
    }
    let irreducible = irreducible_exact_fps(p, max_degree, &transitive, caps, &mut rejected)?;
    for e in &irreducible {
        if e.report.set.len() > 1 && !is_irreducible(e.set().set(), &ic)? {
            notes.push(format!("{} = {} is not irreducible", e.name, e.form));
        }
    }
    let w = projective_free_fps(p, max_degree, &irreducible, caps, &mut rejected, &mut notes)?;
    let v = projective_irreducible_fps(p, q, max_degree, caps)?;

    let mut forms: Vec<(String, SqSet)> = Vec::new();
    let mut seen: Vec<SqSet> = Vec::new();
    let mut push = |form: String, x: SqSet, seen: &mut Vec<SqSet>| -> Result<()> {
        if is_new(seen, &x, &ic)? {
            seen.push(x.clone());
            forms.push((form, x));
        }
        Ok(())
    };
    for e in &w {
        push(e.name.clone(), e.set().clone(), &mut seen)?;
    }
    for e in &v {
        push(e.name.clone(), e.set().clone(), &mut seen)?;
    }
    for a in &w {
        for b in &v {
            if a.degree + b.degree <= max_degree {
                push(
                    format!("{} * {}", a.name, b.name),
                    a.set().star(b.set())?,
                    &mut seen,
                )?;
            }
        }
    }
    let mut all = verify_all(forms, p, caps, "F", &mut rejected)?;
    all.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.name.cmp(&b.name)));
    for (i, e) in all.iter_mut().enumerate() {
        e.name = format!("F{}", i + 1);
    }
    Ok(ClassificationReport {
        p,
        q,
        max_degree,
        transitive_candidates: transitive,
        irreducible_exact: irreducible,
        projective_free: w,
        projective_irreducible: v,
        all,
        rejected,
        notes,
    })
}

impl ClassificationReport {
    /// Entries of exactly the given degree.
    pub fn of_degree(&self, d: usize) -> Vec<&Entry> {
        self.all.iter().filter(|e| e.degree == d).collect()
    }

    /// Plain-text table of every list.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "classification p={} q={} max_degree={}",
            self.p, self.q, self.max_degree
        );
        let _ = writeln!(s, "\ntransitive candidates");
        let _ = writeln!(
            s,
            "{:<4} {:>3} {:<5} {:<5} {:<7} {:<40} construction",
            "name", "deg", "trans", "irred", "fps", "set"
        );
        for c in &self.transitive_candidates {
            let _ = writeln!(
                s,
                "{:<4} {:>3} {:<5} {:<5} {:<7} {:<40} {}",
                c.name,
                c.degree,
                c.transitive,
                c.irreducible,
                c.report.fixed_point_set.to_string(),
                abbreviate(&c.report.set),
                c.construction
            );
        }
        for (title, list) in [
            ("irreducible exact", &self.irreducible_exact),
            ("projective-free", &self.projective_free),
            ("projective irreducible", &self.projective_irreducible),
            ("all fixed point sets", &self.all),
        ] {
            let _ = writeln!(s, "\n{title}");
            let _ = writeln!(
                s,
                "{:<4} {:>3} {:>4} {:<6} {:<6} {:<6} {:<7} {:<8} {:<24} set",
                "name", "deg", "|X|", "closed", "exact", "proj", "fps", "kappa", "form"
            );
            for e in list.iter() {
                let _ = writeln!(s, "{}", row(e));
            }
        }
        if !self.rejected.is_empty() {
            let _ = writeln!(s, "\nrejected predictions");
            for r in &self.rejected {
                let _ = writeln!(
                    s,
                    "  {} = {} fixed_point_set={}",
                    r.form,
                    abbreviate(&r.set),
                    r.fixed_point_set
                );
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

fn abbreviate(x: &SqSet) -> String {
    let t = x.to_string();
    if t.len() <= 40 {
        t
    } else {
        format!("{}... ({} elements)", &t[..28], x.len())
    }
}

fn row(e: &Entry) -> String {
    let r = &e.report;
    let k = e
        .kappa
        .as_ref()
        .map(|k| k.to_string())
        .unwrap_or_else(|| "-".into());
    format!(
        "{:<4} {:>3} {:>4} {:<6} {:<6} {:<6} {:<7} {:<8} {:<24} {}",
        e.name,
        e.degree,
        r.set.len(),
        r.closed,
        r.exact,
        r.projective,
        r.fixed_point_set.to_string(),
        k,
        e.form,
        abbreviate(&r.set)
    )
}

/// Outcome of comparing the classification with the oracle at one degree.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub p: u32,
    pub q: usize,
    pub n: usize,
    pub verdict: String,
    pub agreements: Vec<SqSet>,
    /// Found by the oracle only.
    pub misses: Vec<SqSet>,
    /// Predicted by the classification only.
    pub extras: Vec<SqSet>,
    pub ledger: Ledger,
    /// Transitive irreducible exact oracle sets all have degree `q` or `pq`.
    pub transitive_degrees_ok: bool,
    pub unknowns: usize,
    pub notes: Vec<String>,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.verdict == "AGREE"
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verify p={} q={} n={}: {}",
            self.p, self.q, self.n, self.verdict
        )?;
        writeln!(
            f,
            "  agreements {}  misses {}  extras {}  unknown {}",
            self.agreements.len(),
            self.misses.len(),
            self.extras.len(),
            self.unknowns
        )?;
        let fmt_opt =
            |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_else(|| "unknown".into());
        writeln!(
            f,
            "  ledger: summands of k Xi = {}, sum of np = {}, holds = {}",
            fmt_opt(self.ledger.total_summands),
            fmt_opt(self.ledger.sum_np),
            self.ledger.holds
        )?;
        writeln!(
            f,
            "  transitive degrees in {{q, pq}}: {}",
            self.transitive_degrees_ok
        )?;
        for x in &self.agreements {
            writeln!(f, "  = {x}")?;
        }
        for x in &self.misses {
            writeln!(f, "  miss {x}")?;
        }
        for x in &self.extras {
            writeln!(f, "  extra {x}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// Compare the oracle on `Ξ^q_{qn}` with the classification at degree `qn`.
pub fn verify_against_oracle(p: u32, q: usize, n: usize, caps: &Caps) -> Result<Comparison> {
    check_primes(p, q)?;
    let ic = inner(caps);
    let deg = q * n;
    let oracle = broue_oracle(p, q, n, caps)?;
    let class = all_fps(p, q, deg, caps)?;
    let predicted: Vec<SqSet> = class
        .of_degree(deg)
        .into_iter()
        .map(|e| e.set().clone())
        .collect();
    let found = oracle.kept_sets();
    let mut agreements = Vec::new();
    let mut misses = Vec::new();
    let mut matched = vec![false; predicted.len()];
    for x in &found {
        let mut hit = false;
        for (j, y) in predicted.iter().enumerate() {
            if !matched[j] && equivalent(x.set(), y.set(), &ic)? {
                matched[j] = true;
                hit = true;
                break;
            }
        }
        if hit {
            agreements.push(x.clone());
        } else {
            misses.push(x.clone());
        }
    }
    let extras: Vec<SqSet> = predicted
        .iter()
        .zip(&matched)
        .filter(|(_, &m)| !m)
        .map(|(y, _)| y.clone())
        .collect();
    let mut transitive_degrees_ok = true;
    for r in &oracle.kept {
        if r.exact && is_transitive_set(&r.set) && is_irreducible(r.set.set(), &ic)? {
            let d = r.set.degree();
            transitive_degrees_ok &= d == q || d == p as usize * q;
        }
    }
    let unknowns = oracle
        .entries
        .iter()
        .filter(|e| e.kept == Verdict::Unknown)
        .count()
        + class
            .rejected
            .iter()
            .filter(|r| r.fixed_point_set == Verdict::Unknown)
            .count();
    let mut notes = oracle.notes.clone();
    notes.extend(class.notes.iter().cloned());
    let agree = misses.is_empty()
        && extras.is_empty()
        && unknowns == 0
        && oracle.ledger.holds == Verdict::Yes
        && transitive_degrees_ok;
    Ok(Comparison {
        p,
        q,
        n,
        verdict: if agree {
            "AGREE".into()
        } else {
            "MISMATCH".into()
        },
        agreements,
        misses,
        extras,
        ledger: oracle.ledger,
        transitive_degrees_ok,
        unknowns,
        notes,
    })
}
