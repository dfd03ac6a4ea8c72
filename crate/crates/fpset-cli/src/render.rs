//! Text forms of the reports. Every verdict printed here also appears, under
//! the same key, in the JSON form.

use std::fmt::Write as _;

use serde::Serialize;

use fpset::fps::{FpsReport, Kappa, OracleRun};
use fpset::setalg::{PermSet, SqSet};

#[derive(Serialize)]
pub struct ClosureOut {
    pub set: SqSet,
    pub p: u32,
    pub closure: SqSet,
    pub closed: bool,
}

#[derive(Serialize)]
pub struct FactorOut {
    pub set: PermSet,
    pub factors: Vec<PermSet>,
    pub irreducible: bool,
}

#[derive(Serialize)]
pub struct KappaOut {
    pub set: SqSet,
    pub p: u32,
    pub q: usize,
    pub kappa: Kappa,
}

pub fn closure(c: &ClosureOut) -> String {
    format!(
        "set: {}\np: {}\nclosure: {}\nclosed: {}\n",
        c.set, c.p, c.closure, c.closed
    )
}

pub fn factor(f: &FactorOut) -> String {
    let mut s = format!("set: {}\nirreducible: {}\nfactors:\n", f.set, f.irreducible);
    for x in &f.factors {
        let _ = writeln!(s, "  {x}");
    }
    s
}

fn join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn fps(r: &FpsReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set: {}", r.set);
    let _ = writeln!(s, "p: {}\nq: {}", r.p, r.q);
    let _ = writeln!(
        s,
        "closed: {}\nexact: {}\nprojective: {}",
        r.closed, r.exact, r.projective
    );
    let _ = writeln!(s, "fixed_point_set: {}", r.fixed_point_set);
    let _ = writeln!(
        s,
        "S_order: {}\nN_order: {}\nM_order: {}",
        r.s_order, r.n_order, r.m_order
    );
    let _ = writeln!(s, "Q_gens: [{}]", join(&r.q_gens));
    let np = r.np.map(|n| n.to_string()).unwrap_or_else(|| "null".into());
    let _ = writeln!(s, "np: {np}");
    if let Some(k) = &r.kappa {
        let _ = writeln!(s, "kappa: {k}");
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub fn kappa(k: &KappaOut) -> String {
    let mut s = format!("set: {}\np: {}\nkappa: {}\n", k.set, k.p, k.kappa);
    for step in &k.kappa.trajectory {
        let _ = writeln!(
            s,
            "  u={} dim={} projective_summand={}",
            step.u, step.dim, step.projective_summand
        );
    }
    if k.kappa.budget_exhausted {
        let _ = writeln!(s, "budget exhausted");
    }
    s
}

pub fn oracle(r: &OracleRun) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "oracle p={} q={} n={}: {} subgroup classes, {} fixed point sets",
        r.p,
        r.q,
        r.n,
        r.subgroup_classes,
        r.kept.len()
    );
    let _ = writeln!(
        s,
        "{:>6} {:>6} {:>8} {:>8} {:>4} {:<7}",
        "|Q|", "|Fix|", "|S_X|", "Q Sylow", "np", "kept"
    );
    for e in &r.entries {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "{:>6} {:>6} {:>8} {:>8} {:>4} {:<7}",
            e.q_order,
            e.fix_size,
            opt(e.s_order.map(|x| x.to_string())),
            opt(e.q_sylow_in_s.map(|x| x.to_string())),
            opt(e.np.map(|x| x.to_string())),
            e.kept.to_string()
        );
    }
    let _ = writeln!(s, "\nfixed point sets");
    for k in &r.kept {
        let _ = writeln!(
            s,
            "  {}  |X|={} np={}",
            k.set,
            k.set.len(),
            k.np.map(|x| x.to_string()).unwrap_or("unknown".into())
        );
    }
    let l = &r.ledger;
    let fmt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_else(|| "unknown".into());
    let _ = writeln!(
        s,
        "\nledger: dim {} summands {} sum_np {} holds {}",
        l.class_dim,
        fmt(l.total_summands),
        fmt(l.sum_np),
        l.holds
    );
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}
