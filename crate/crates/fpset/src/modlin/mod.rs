//! Modules over `GF(p)`: permutation modules, projectivity over Sylow
//! subgroups, decomposition into indecomposables, tensor and wreath powers.

mod decompose;
pub mod matrix;

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

pub use decompose::{
    decompose, decompose_report, has_projective_summand, np, np_split, DecompReport, Summand,
};
pub use matrix::MatGFp;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{is_power_of, sylow_p, GroupHandle};
use crate::perm::{Permutation, Point};

/// The set a permutation module is built on.
#[derive(Clone, Debug)]
pub enum GSet {
    /// Points of the group's domain, acted on by `i ↦ i^g`.
    Points(Vec<Point>),
    /// Permutations, acted on by conjugation.
    Conjugation(Vec<Permutation>),
}

#[derive(Clone)]
enum RepTable {
    Perm(HashMap<Permutation, Vec<u32>>),
    Mat(HashMap<Permutation, MatGFp>),
}

/// A representation of `group / kernel` over `GF(p)`, given by one matrix per
/// generator of `group`. Permutation modules also keep their basis
/// permutations.
#[derive(Clone)]
pub struct ModuleRep {
    pub p: u32,
    pub dim: usize,
    pub group: GroupHandle,
    /// A normal subgroup acting trivially; the module is regarded as a module
    /// for the quotient.
    pub kernel: Option<GroupHandle>,
    pub action: Vec<MatGFp>,
    pub basis_labels: Vec<String>,
    perms: Option<Vec<Vec<u32>>>,
    table: Arc<OnceLock<Arc<RepTable>>>,
}

impl std::fmt::Debug for ModuleRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModuleRep")
            .field("p", &self.p)
            .field("dim", &self.dim)
            .field("group", &self.group)
            .field("permutation", &self.perms.is_some())
            .finish()
    }
}

/// Permutation module of `g` on `x`. Labels are sorted; `ActionNotClosed` if
/// a generator maps a label outside `x`.
pub fn perm_module(g: &GroupHandle, x: &GSet, p: u32) -> Result<ModuleRep> {
    check_prime(p)?;
    let (labels, perms): (Vec<String>, Vec<Vec<u32>>) =
        match x {
            GSet::Points(pts) => {
                let mut pts = pts.clone();
                pts.sort_unstable();
                pts.dedup();
                let idx: HashMap<Point, u32> = pts
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| (v, k as u32))
                    .collect();
                let mut perms = Vec::new();
                for gen in g.generators() {
                    let mut v = Vec::with_capacity(pts.len());
                    for &a in &pts {
                        let b = gen.apply(a);
                        v.push(*idx.get(&b).ok_or_else(|| {
                            Error::ActionNotClosed(format!("{gen} maps {a} to {b}"))
                        })?);
                    }
                    perms.push(v);
                }
                (pts.iter().map(|a| a.to_string()).collect(), perms)
            }
            GSet::Conjugation(xs) => {
                let mut xs = xs.clone();
                xs.sort();
                xs.dedup();
                let idx: HashMap<&Permutation, u32> =
                    xs.iter().enumerate().map(|(k, v)| (v, k as u32)).collect();
                let mut perms = Vec::new();
                for gen in g.generators() {
                    let mut v = Vec::with_capacity(xs.len());
                    for a in &xs {
                        let b = a.conjugate(gen);
                        v.push(*idx.get(&b).ok_or_else(|| {
                            Error::ActionNotClosed(format!("{a} conjugated by {gen} is {b}"))
                        })?);
                    }
                    perms.push(v);
                }
                (xs.iter().map(|a| a.to_string()).collect(), perms)
            }
        };
    Ok(ModuleRep::from_perms(g.clone(), p, labels, perms))
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if !(2..1 << 16).contains(&p)
        || (2..p)
            .take_while(|d| d * d <= p)
            .any(|d| p.is_multiple_of(d))
    {
        return Err(Error::InvalidInput(format!(
            "{p} is not a prime below 2^16"
        )));
    }
    Ok(())
}

impl ModuleRep {
    pub(crate) fn from_perms(
        group: GroupHandle,
        p: u32,
        labels: Vec<String>,
        perms: Vec<Vec<u32>>,
    ) -> Self {
        let action = perms.iter().map(|v| MatGFp::from_perm(v, p)).collect();
        ModuleRep {
            p,
            dim: labels.len(),
            group,
            kernel: None,
            action,
            basis_labels: labels,
            perms: Some(perms),
            table: Arc::new(OnceLock::new()),
        }
    }

    /// A module given by arbitrary generator matrices.
    pub fn from_matrices(group: GroupHandle, p: u32, action: Vec<MatGFp>) -> Result<Self> {
        check_prime(p)?;
        if action.len() != group.generators().len() {
            return Err(Error::InvalidInput(
                "one matrix per generator required".into(),
            ));
        }
        let dim = action.first().map_or(0, MatGFp::rows);
        for m in &action {
            if m.rows() != dim || m.cols() != dim || m.modulus() != p {
                return Err(Error::InvalidInput(
                    "action matrices must be square of one size".into(),
                ));
            }
            if m.inverse().is_none() {
                return Err(Error::InvalidInput("action matrix not invertible".into()));
            }
        }
        Ok(ModuleRep {
            p,
            dim,
            group,
            kernel: None,
            action,
            basis_labels: (0..dim).map(|k| format!("e{k}")).collect(),
            perms: None,
            table: Arc::new(OnceLock::new()),
        })
    }

    pub fn is_permutation_module(&self) -> bool {
        self.perms.is_some()
    }

    pub(crate) fn basis_perms(&self) -> Option<&[Vec<u32>]> {
        self.perms.as_deref()
    }

    /// Regard the module as a module for `group / kernel`. Fails unless every
    /// generator of `kernel` lies in the group and acts trivially.
    pub fn with_kernel(mut self, kernel: GroupHandle, cap: u64) -> Result<Self> {
        if kernel.is_trivial() {
            self.kernel = None;
            return Ok(self);
        }
        let id = MatGFp::identity(self.dim, self.p);
        for k in kernel.generators() {
            if !self.group.contains(k, cap)? {
                return Err(Error::InvalidInput(format!(
                    "{k} is not in the acting group"
                )));
            }
            if self.matrix_of(k, cap)? != id {
                return Err(Error::InvalidInput(format!("{k} does not act trivially")));
            }
        }
        if !self.group.normalizes(&kernel, cap)? {
            return Err(Error::InvalidInput("kernel is not normal".into()));
        }
        self.kernel = Some(kernel);
        Ok(self)
    }

    /// Representation of every group element, built by walking the Cayley
    /// graph. Reaching an element twice with different images means the
    /// generator images do not define a homomorphism.
    fn table(&self, cap: u64) -> Result<Arc<RepTable>> {
        if let Some(t) = self.table.get() {
            return Ok(t.clone());
        }
        let order = self.group.order(cap)?;
        let gens = self.group.generators();
        let t = match &self.perms {
            Some(perms) => {
                let id: Vec<u32> = (0..self.dim as u32).collect();
                let mut map = HashMap::with_capacity(order as usize);
                map.insert(Permutation::identity(), id);
                let mut queue = vec![Permutation::identity()];
                let mut k = 0;
                while k < queue.len() {
                    let x = queue[k].clone();
                    k += 1;
                    for (g, pg) in gens.iter().zip(perms) {
                        let y = x.then(g);
                        let img: Vec<u32> = map[&x].iter().map(|&i| pg[i as usize]).collect();
                        match map.get(&y) {
                            Some(old) if *old != img => {
                                return Err(Error::InvalidInput(
                                    "generator images do not define an action".into(),
                                ))
                            }
                            Some(_) => {}
                            None => {
                                map.insert(y.clone(), img);
                                queue.push(y);
                            }
                        }
                    }
                }
                RepTable::Perm(map)
            }
            None => {
                let mut map = HashMap::with_capacity(order as usize);
                map.insert(Permutation::identity(), MatGFp::identity(self.dim, self.p));
                let mut queue = vec![Permutation::identity()];
                let mut k = 0;
                while k < queue.len() {
                    let x = queue[k].clone();
                    k += 1;
                    for (g, m) in gens.iter().zip(&self.action) {
                        let y = x.then(g);
                        let img = map[&x].mul(m);
                        match map.get(&y) {
                            Some(old) if *old != img => {
                                return Err(Error::InvalidInput(
                                    "generator matrices do not define a representation".into(),
                                ))
                            }
                            Some(_) => {}
                            None => {
                                map.insert(y.clone(), img);
                                queue.push(y);
                            }
                        }
                    }
                }
                RepTable::Mat(map)
            }
        };
        Ok(self.table.get_or_init(|| Arc::new(t)).clone())
    }

    /// Check that the generator images define a representation of the group.
    pub fn validate(&self, cap: u64) -> Result<()> {
        self.table(cap).map(|_| ())
    }

    pub fn matrix_of(&self, g: &Permutation, cap: u64) -> Result<MatGFp> {
        let t = self.table(cap)?;
        match &*t {
            RepTable::Perm(m) => m
                .get(g)
                .map(|v| MatGFp::from_perm(v, self.p))
                .ok_or_else(|| Error::InvalidInput(format!("{g} is not in the acting group"))),
            RepTable::Mat(m) => m
                .get(g)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("{g} is not in the acting group"))),
        }
    }

    /// `Σ ρ(g)` over the given elements.
    pub(crate) fn sum_over(&self, elems: &[Permutation], cap: u64) -> Result<MatGFp> {
        let t = self.table(cap)?;
        let mut acc = MatGFp::zeros(self.dim, self.dim, self.p);
        match &*t {
            RepTable::Perm(m) => {
                for g in elems {
                    let v = m
                        .get(g)
                        .ok_or_else(|| Error::InvalidInput(format!("{g} not in group")))?;
                    for (i, &j) in v.iter().enumerate() {
                        let cur = acc.get(i, j as usize);
                        acc.set(i, j as usize, cur + 1);
                    }
                }
            }
            RepTable::Mat(m) => {
                for g in elems {
                    let r = m
                        .get(g)
                        .ok_or_else(|| Error::InvalidInput(format!("{g} not in group")))?;
                    acc.add_scaled(r, 1);
                }
            }
        }
        Ok(acc)
    }

    /// Sylow `p`-subgroup of `group / kernel`, as coset representatives in
    /// `group`, together with its order.
    pub(crate) fn quotient_sylow(&self, caps: &Caps) -> Result<(Vec<Permutation>, u64)> {
        let cap = caps.group_cap;
        let syl = sylow_p(&self.group, self.p, cap, caps.exec)?;
        let elems = syl.enumerate(cap)?;
        let Some(k) = &self.kernel else {
            return Ok((elems.to_vec(), elems.len() as u64));
        };
        let ks = k.enumerate(cap)?;
        let inter: Vec<&Permutation> = ks
            .iter()
            .filter(|x| elems.binary_search(x).is_ok())
            .collect();
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut reps = Vec::new();
        for g in elems.iter() {
            if seen.contains(g) {
                continue;
            }
            for h in &inter {
                seen.insert(g.then(h));
            }
            reps.push(g.clone());
        }
        let n = reps.len() as u64;
        Ok((reps, n))
    }

    /// Direct sum with another module for the same group.
    pub fn direct_sum(&self, other: &ModuleRep) -> Result<ModuleRep> {
        if self.group.generators() != other.group.generators() || self.p != other.p {
            return Err(Error::InvalidInput(
                "direct sum needs one group and one prime".into(),
            ));
        }
        let mut labels = self.basis_labels.clone();
        labels.extend(other.basis_labels.iter().map(|l| format!("{l}'")));
        let mut out = match (&self.perms, &other.perms) {
            (Some(a), Some(b)) => {
                let off = self.dim as u32;
                let perms = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| {
                        x.iter()
                            .copied()
                            .chain(y.iter().map(|&v| v + off))
                            .collect()
                    })
                    .collect();
                ModuleRep::from_perms(self.group.clone(), self.p, labels, perms)
            }
            _ => {
                let n = self.dim + other.dim;
                let mats = self
                    .action
                    .iter()
                    .zip(&other.action)
                    .map(|(a, b)| {
                        let mut m = MatGFp::zeros(n, n, self.p);
                        for i in 0..self.dim {
                            for j in 0..self.dim {
                                m.set(i, j, a.get(i, j));
                            }
                        }
                        for i in 0..other.dim {
                            for j in 0..other.dim {
                                m.set(self.dim + i, self.dim + j, b.get(i, j));
                            }
                        }
                        m
                    })
                    .collect();
                let mut m = ModuleRep::from_matrices(self.group.clone(), self.p, mats)?;
                m.basis_labels = labels;
                m
            }
        };
        out.kernel = self.kernel.clone();
        Ok(out)
    }
}

/// Rank of the norm element `Σ_{g∈P} g` acting on `m`.
pub fn norm_rank(m: &ModuleRep, p_group: &GroupHandle, cap: u64) -> Result<usize> {
    let elems = p_group.enumerate(cap)?;
    let order = elems.len() as u64;
    if !is_power_of(order, m.p as u64) {
        return Err(Error::NotPGroup { order, p: m.p });
    }
    Ok(m.sum_over(&elems, cap)?.rank())
}

/// `norm_rank · |P| = dim`.
pub fn is_projective_over_pgroup(m: &ModuleRep, p_group: &GroupHandle, cap: u64) -> Result<bool> {
    let r = norm_rank(m, p_group, cap)?;
    Ok(r as u64 * p_group.order(cap)? == m.dim as u64)
}

fn max_point(g: &GroupHandle) -> Point {
    g.domain().iter().copied().max().unwrap_or(0)
}

fn shift(x: &Permutation, by: Point) -> Permutation {
    x.relabel(|i| i + by)
}

/// Outer tensor product for `G₁ × G₂`, realised on disjoint copies of the
/// two domains. Both factors must be permutation modules.
pub fn tensor(a: &ModuleRep, b: &ModuleRep) -> Result<ModuleRep> {
    let (Some(pa), Some(pb)) = (&a.perms, &b.perms) else {
        return Err(Error::InvalidInput(
            "tensor needs permutation modules".into(),
        ));
    };
    if a.p != b.p {
        return Err(Error::InvalidInput("tensor needs one prime".into()));
    }
    let off = max_point(&a.group);
    let mut domain = a.group.domain().to_vec();
    domain.extend(b.group.domain().iter().map(|&i| i + off));
    let mut gens = a.group.generators().to_vec();
    gens.extend(b.group.generators().iter().map(|g| shift(g, off)));
    let group = GroupHandle::new(&domain, gens)?;
    let (da, db) = (a.dim as u32, b.dim as u32);
    let mut perms = Vec::new();
    for pg in pa {
        perms.push(
            (0..da * db)
                .map(|t| pg[(t / db) as usize] * db + t % db)
                .collect(),
        );
    }
    for pg in pb {
        perms.push(
            (0..da * db)
                .map(|t| (t / db) * db + pg[(t % db) as usize])
                .collect(),
        );
    }
    let labels = a
        .basis_labels
        .iter()
        .flat_map(|x| b.basis_labels.iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    let mut out = ModuleRep::from_perms(group, a.p, labels, perms);
    let mut kgens = Vec::new();
    if let Some(k) = &a.kernel {
        kgens.extend(k.generators().iter().cloned());
    }
    if let Some(k) = &b.kernel {
        kgens.extend(k.generators().iter().map(|g| shift(g, off)));
    }
    if !kgens.is_empty() {
        out.kernel = Some(GroupHandle::new(&domain, kgens)?);
    }
    Ok(out)
}

/// `M^{≀u}` for `G ≀ Sym(u)` on `u`-tuples of basis labels. The group acts on
/// `u` disjoint copies of `G`'s domain; base generators act in copy 0 and
/// the top group permutes copies.
pub fn wreath_power_module(m: &ModuleRep, u: usize, caps: &Caps) -> Result<ModuleRep> {
    if u == 0 {
        return Err(Error::InvalidInput(
            "wreath exponent must be positive".into(),
        ));
    }
    if u == 1 {
        return Ok(m.clone());
    }
    let Some(pm) = &m.perms else {
        return Err(Error::InvalidInput(
            "wreath power needs a permutation module".into(),
        ));
    };
    let dim = (m.dim as u128).checked_pow(u as u32).unwrap_or(u128::MAX);
    if dim > caps.dim_cap as u128 {
        return Err(Error::cap("wreath power dimension", caps.dim_cap as u64));
    }
    let g_order = m.group.order(caps.group_cap)? as u128;
    let w_order = g_order
        .checked_pow(u as u32)
        .and_then(|x| x.checked_mul(crate::group::factorial(u as u64) as u128));
    if w_order.is_none_or(|w| w > caps.group_cap as u128) {
        return Err(Error::cap("wreath product order", caps.group_cap));
    }
    let base_dom: Vec<Point> = if m.group.domain().is_empty() {
        vec![1]
    } else {
        m.group.domain().to_vec()
    };
    let s = *base_dom.iter().max().unwrap();
    let copy = |x: Point, c: usize| x + c as Point * s;
    let mut domain = Vec::new();
    for c in 0..u {
        domain.extend(base_dom.iter().map(|&x| copy(x, c)));
    }
    let swap = Permutation::from_pairs(
        base_dom
            .iter()
            .flat_map(|&x| [(copy(x, 0), copy(x, 1)), (copy(x, 1), copy(x, 0))]),
    )?;
    let cycle = Permutation::from_pairs((0..u).flat_map(|c| {
        base_dom
            .iter()
            .map(move |&x| (copy(x, c), copy(x, (c + 1) % u)))
    }))?;
    let mut gens: Vec<Permutation> = m.group.generators().to_vec();
    gens.push(swap);
    if u > 2 {
        gens.push(cycle);
    }
    let group = GroupHandle::new(&domain, gens)?;

    let k = m.dim;
    let n = dim as usize;
    let digits = |mut t: usize| -> Vec<usize> {
        let mut d = vec![0; u];
        for slot in d.iter_mut() {
            *slot = t % k;
            t /= k;
        }
        d
    };
    let undigits = |d: &[usize]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * k + x) as u32 };
    let mut perms: Vec<Vec<u32>> = Vec::new();
    for pg in pm {
        perms.push(
            (0..n)
                .map(|t| {
                    let mut d = digits(t);
                    d[0] = pg[d[0]] as usize;
                    undigits(&d)
                })
                .collect(),
        );
    }
    perms.push(
        (0..n)
            .map(|t| {
                let mut d = digits(t);
                d.swap(0, 1);
                undigits(&d)
            })
            .collect(),
    );
    if u > 2 {
        perms.push(
            (0..n)
                .map(|t| {
                    let d = digits(t);
                    let mut e = vec![0; u];
                    for c in 0..u {
                        e[(c + 1) % u] = d[c];
                    }
                    undigits(&e)
                })
                .collect(),
        );
    }
    let labels = (0..n)
        .map(|t| {
            let parts: Vec<&str> = digits(t)
                .iter()
                .map(|&i| m.basis_labels[i].as_str())
                .collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let mut out = ModuleRep::from_perms(group, m.p, labels, perms);
    if let Some(kern) = &m.kernel {
        let kg: Vec<Permutation> = (0..u)
            .flat_map(|c| {
                kern.generators()
                    .iter()
                    .map(move |g| shift(g, c as Point * s))
            })
            .collect();
        out.kernel = Some(GroupHandle::new(&domain, kg)?);
    }
    Ok(out)
}
