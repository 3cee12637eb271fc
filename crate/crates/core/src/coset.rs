//! Todd–Coxeter coset enumeration (HLT strategy with coincidence processing).
//!
//! Column `2k` of a coset table is generator `k`, column `2k + 1` its
//! inverse. Cosets are numbered in definition order; dead cosets are removed
//! before the table is handed out, so coset 0 is always the subgroup itself.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{GroupError, Result};
use crate::fp::{FpGroup, Word};
use crate::group::PermGroup;
use crate::hom::{GroupHom, PresentationHom};
use crate::perm::Perm;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumLimits {
    /// Upper bound on the total number of coset definitions.
    pub max_cosets: usize,
    pub max_deductions: Option<usize>,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_cosets: 1_000_000,
            max_deductions: None,
        }
    }
}

impl EnumLimits {
    pub fn new(max_cosets: usize) -> Result<Self> {
        if max_cosets == 0 {
            return Err(GroupError::InvalidInput("max_cosets must be at least 1".into()));
        }
        Ok(EnumLimits {
            max_cosets,
            max_deductions: None,
        })
    }
}

/// A complete coset table over live cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generator_count: usize,
    rows: Vec<Vec<u32>>,
    /// Cosets defined during enumeration, dead ones included.
    cosets_defined: usize,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn cosets_defined(&self) -> usize {
        self.cosets_defined
    }

    /// Coset reached from `coset` by generator `g` (or its inverse).
    pub fn act(&self, coset: usize, g: usize, inverse: bool) -> usize {
        self.rows[coset][2 * g + inverse as usize] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters()
            .iter()
            .fold(coset, |c, l| self.act(c, l.generator, l.exponent < 0))
    }

    /// Tables handed out are always complete; kept as a query for callers
    /// that persist tables.
    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&v| v != UNDEF))
    }

    /// Generator `g` as a permutation of the cosets.
    pub fn column_perm(&self, g: usize) -> Perm {
        Perm::from_images_unchecked(self.rows.iter().map(|r| r[2 * g]).collect())
    }

    /// Every relator traced from every coset returns to it, and every column
    /// is a bijection. Returns the first failure.
    pub fn audit(&self, presentation: &FpGroup) -> std::result::Result<(), String> {
        for (c, row) in self.rows.iter().enumerate() {
            for (x, &d) in row.iter().enumerate() {
                if d == UNDEF {
                    return Err(format!("entry ({c}, {x}) undefined"));
                }
                if self.rows[d as usize][x ^ 1] as usize != c {
                    return Err(format!("column {x} is not inverted at coset {c}"));
                }
            }
        }
        for (k, r) in presentation.relators().iter().enumerate() {
            for c in 0..self.index() {
                if self.trace(c, r) != c {
                    return Err(format!("relator {k} does not close at coset {c}"));
                }
            }
        }
        Ok(())
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the presented group.
pub fn todd_coxeter(presentation: &FpGroup, subgroup: &[Word], limits: EnumLimits) -> Result<CosetTable> {
    let ngens = presentation.generator_count();
    if let Some(w) = subgroup.iter().find(|w| w.max_generator().is_some_and(|g| g >= ngens)) {
        return Err(GroupError::InvalidInput(format!(
            "subgroup generator {} references an undeclared generator",
            w.display_with(presentation.generator_names())
        )));
    }
    let relators = prepare_relators(presentation.relators());
    let subgroup: Vec<Vec<u32>> = subgroup.iter().map(|w| columns(&w.free_reduce())).collect();
    let mut e = Enumerator::new(2 * ngens, limits);
    for w in &subgroup {
        if !w.is_empty() {
            e.scan_and_fill(0, w)?;
        }
    }
    let mut c = 0usize;
    while c < e.defined {
        for r in &relators {
            if !e.is_live(c as u32) {
                break;
            }
            e.scan_and_fill(c as u32, r)?;
        }
        if e.is_live(c as u32) {
            for x in 0..e.ncols {
                if e.get(c as u32, x) == UNDEF {
                    e.define(c as u32, x)?;
                }
            }
        }
        c += 1;
    }
    Ok(e.compact(ngens))
}

/// Regular representation from a table enumerated over the trivial subgroup,
/// with the map sending each presentation generator to its column.
pub fn perm_rep(table: &CosetTable, presentation: &FpGroup) -> Result<(PermGroup, PresentationHom)> {
    if !table.is_complete() || table.generator_count() != presentation.generator_count() {
        return Err(GroupError::IncompleteTable);
    }
    let degree = table.index();
    let images: Vec<Perm> = (0..table.generator_count()).map(|g| table.column_perm(g)).collect();
    let group = PermGroup::new(degree, images.clone())?;
    let hom = PresentationHom::new(presentation, &group, images)?;
    Ok((group, hom))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum FpOrder {
    Finite { order: usize },
    /// Enumeration ran out of resources; no claim about finiteness.
    Unknown { cosets_defined: usize },
}

pub fn order_of_fp(presentation: &FpGroup, limits: EnumLimits) -> FpOrder {
    match todd_coxeter(presentation, &[], limits) {
        Ok(t) => FpOrder::Finite { order: t.index() },
        Err(GroupError::LimitExceeded { cosets }) => FpOrder::Unknown { cosets_defined: cosets },
        Err(e) => unreachable!("enumeration over the trivial subgroup failed: {e}"),
    }
}

/// Enumerates a finite presentation into its regular permutation representation.
pub fn enumerate_group(presentation: &FpGroup, limits: EnumLimits) -> Result<(PermGroup, PresentationHom)> {
    let table = todd_coxeter(presentation, &[], limits)?;
    perm_rep(&table, presentation)
}

impl PresentationHom {
    /// The same map with its domain enumerated, so kernels and images can be
    /// queried.
    pub fn to_group_hom(&self, limits: EnumLimits) -> Result<GroupHom> {
        let (domain, _) = enumerate_group(self.presentation(), limits)?;
        GroupHom::from_perm_images(&domain, self.codomain(), self.images())
    }
}

fn columns(w: &Word) -> Vec<u32> {
    w.letters()
        .iter()
        .map(|l| 2 * l.generator as u32 + (l.exponent < 0) as u32)
        .collect()
}

/// Cyclically reduced, deduplicated up to rotation and inversion, shortest
/// first. Relators that reduce to the empty word are dropped.
fn prepare_relators(relators: &[Word]) -> Vec<Vec<u32>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for r in relators {
        let w = r.cyclic_reduce();
        if w.is_empty() {
            continue;
        }
        let cols = columns(&w);
        let inv = columns(&w.inverse());
        let canon = (0..cols.len())
            .flat_map(|k| {
                let mut a = cols.clone();
                a.rotate_left(k);
                let mut b = inv.clone();
                b.rotate_left(k);
                [a, b]
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(cols);
        }
    }
    out.sort_by_key(|r| r.len());
    out
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    defined: usize,
    deductions: usize,
    limits: EnumLimits,
}

impl Enumerator {
    fn new(ncols: usize, limits: EnumLimits) -> Self {
        Enumerator {
            ncols,
            table: vec![UNDEF; ncols],
            forward: vec![0],
            defined: 1,
            deductions: 0,
            limits,
        }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        if self.defined >= self.limits.max_cosets {
            return Err(GroupError::LimitExceeded {
                cosets: self.defined,
            });
        }
        let n = self.defined as u32;
        self.defined += 1;
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.forward.push(n);
        self.set(c, x, n);
        self.set(n, x ^ 1, c);
        Ok(())
    }

    fn scan_and_fill(&mut self, c: u32, w: &[u32]) -> Result<()> {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len();
        loop {
            while i < j && self.get(f, w[i] as usize) != UNDEF {
                f = self.get(f, w[i] as usize);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.get(b, (w[j - 1] ^ 1) as usize) != UNDEF {
                b = self.get(b, (w[j - 1] ^ 1) as usize);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                let x = w[i] as usize;
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                self.deductions += 1;
                if let Some(cap) = self.limits.max_deductions {
                    if self.deductions > cap {
                        return Err(GroupError::LimitExceeded {
                            cosets: self.defined,
                        });
                    }
                }
                return Ok(());
            }
            self.define(f, w[i] as usize)?;
        }
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.forward[r as usize] != r {
            r = self.forward[r as usize];
        }
        let mut x = c;
        while self.forward[x as usize] != r {
            let next = self.forward[x as usize];
            self.forward[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.forward[hi as usize] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut k = 0;
        while k < queue.len() {
            let dead = queue[k];
            k += 1;
            for x in 0..self.ncols {
                let d = self.get(dead, x);
                if d == UNDEF {
                    continue;
                }
                if self.get(d, x ^ 1) == dead {
                    self.set(d, x ^ 1, UNDEF);
                }
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x, &mut queue);
                } else {
                    let nu_inv = self.get(nu, x ^ 1);
                    if nu_inv != UNDEF {
                        self.merge(mu, nu_inv, &mut queue);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    fn compact(mut self, ngens: usize) -> CosetTable {
        let live: Vec<u32> = (0..self.defined as u32).filter(|&c| self.is_live(c)).collect();
        let mut renumber = vec![UNDEF; self.defined];
        for (k, &c) in live.iter().enumerate() {
            renumber[c as usize] = k as u32;
        }
        let rows = live
            .iter()
            .map(|&c| {
                (0..self.ncols)
                    .map(|x| {
                        let d = self.get(c, x);
                        if d == UNDEF {
                            return UNDEF;
                        }
                        let d = self.rep(d);
                        renumber[d as usize]
                    })
                    .collect()
            })
            .collect();
        CosetTable {
            generator_count: ngens,
            rows,
            cosets_defined: self.defined,
        }
    }
}
