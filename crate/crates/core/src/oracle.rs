//! Exhaustive search for `ex(n, H, tK_r^p)` over all small hosts.
//!
//! Raw mode walks every edge subset depth first, dropping a branch as soon
//! as an added edge completes `tK_r^p` (freeness is inherited by
//! subgraphs, so nothing below it can be free). Dedup mode works on one
//! representative per isomorphism class, built by adding a vertex to the
//! free representatives one size down.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bits::{self, binomial, bit};
use crate::canon::{self, CanonCode};
use crate::counting;
use crate::error::{Error, Result};
use crate::formulas::{ex_closed_value, ProblemParams};
use crate::hypergraph::{Host, Hypergraph, LinkTable};
use crate::Graph;

/// Largest `C(n, p)` raw enumeration accepts without an override.
pub const RAW_MAX_SLOTS: u64 = 30;
/// Dedup limits: `n ≤ 8` and `C(n, p) ≤ 28`.
pub const DEDUP_MAX_ORDER: usize = 8;
pub const DEDUP_MAX_SLOTS: u64 = 28;
pub const DEFAULT_WITNESS_CAP: usize = 16;
/// Tail search limit for `p ≥ 3`.
pub const TAIL_MAX_ORDER: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every labelled edge subset.
    Raw,
    /// One host per isomorphism class.
    Dedup,
    /// Raw while `C(n, p) ≤ 21`, dedup above.
    Auto,
}

impl Mode {
    fn resolve(self, n: usize, p: usize) -> Mode {
        match self {
            Mode::Auto if binomial(n, p) <= 21 => Mode::Raw,
            Mode::Auto => Mode::Dedup,
            m => m,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub mode: Mode,
    /// Only hosts with at least this many universal vertices count.
    pub universal: usize,
    pub witness_cap: usize,
    /// Thread count; `None` uses the global pool.
    pub workers: Option<usize>,
    pub allow_large: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { mode: Mode::Auto, universal: 0, witness_cap: DEFAULT_WITNESS_CAP, workers: None, allow_large: false }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleStats {
    /// Hosts (raw) or representatives (dedup) that were `tK_r^p`-free and
    /// evaluated.
    pub scanned: u64,
    /// Branches (raw) or augmentations (dedup) cut because they contained
    /// `tK_r^p`.
    pub pruned: u64,
    /// Free hosts that also met the constraints.
    pub admissible: u64,
}

impl OracleStats {
    fn add(&mut self, o: &OracleStats) {
        self.scanned += o.scanned;
        self.pruned += o.pruned;
        self.admissible += o.admissible;
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub value: u64,
    /// Canonical forms of extremal hosts, by increasing canonical code.
    pub witnesses: Vec<Hypergraph>,
    pub stats: OracleStats,
    pub elapsed: Duration,
}

fn run_in_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn check_raw(n: usize, p: usize, allow_large: bool) -> Result<()> {
    let slots = binomial(n, p);
    if slots > RAW_MAX_SLOTS && !allow_large {
        return Err(Error::Guard(format!("raw enumeration over C({n},{p}) = {slots} > {RAW_MAX_SLOTS} edge slots")));
    }
    if slots > 62 {
        return Err(Error::Guard(format!("raw enumeration over {slots} edge slots is not addressable")));
    }
    Ok(())
}

fn check_dedup(n: usize, p: usize, allow_large: bool) -> Result<()> {
    let slots = binomial(n, p);
    if (n > DEDUP_MAX_ORDER || slots > DEDUP_MAX_SLOTS) && !allow_large {
        return Err(Error::Guard(format!(
            "dedup enumeration needs n <= {DEDUP_MAX_ORDER} and C(n,p) <= {DEDUP_MAX_SLOTS}; got n={n}, p={p}"
        )));
    }
    if slots > canon::MAX_CODE_BITS {
        return Err(Error::Guard(format!("canonical codes cannot hold C({n},{p}) = {slots} slots")));
    }
    Ok(())
}

/// All hosts on `n` vertices: `2^C(n,p)` labelled ones, or one per
/// isomorphism class.
pub fn enumerate_hosts(n: usize, p: usize, mode: Mode, allow_large: bool) -> Result<Box<dyn Iterator<Item = Hypergraph>>> {
    if p < 2 {
        return Err(Error::Invalid(format!("uniformity {p} < 2")));
    }
    match mode.resolve(n, p) {
        Mode::Raw => {
            check_raw(n, p, allow_large)?;
            let slots = bits::k_subsets(n, p);
            let total = 1u64 << slots.len();
            Ok(Box::new((0..total).map(move |code| {
                let edges = slots.iter().enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, &e)| e);
                Hypergraph::new(n, p, edges).expect("slots are valid edges")
            })))
        }
        _ => {
            check_dedup(n, p, allow_large)?;
            let reps = free_representatives(n, p, None)?;
            Ok(Box::new((0..reps.len()).map(move |i| reps[i].1.clone())))
        }
    }
}

type RepList = Arc<Vec<(CanonCode, Hypergraph)>>;

type RepKey = (usize, usize, Option<(usize, usize)>);

fn rep_cache() -> &'static Mutex<HashMap<RepKey, (RepList, u64)>> {
    static CACHE: OnceLock<Mutex<HashMap<RepKey, (RepList, u64)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Canonical representatives of the `n`-vertex `p`-graphs, optionally only
/// the `tK_r^p`-free ones (`forbid = Some((t, r))`), sorted by code.
fn free_representatives(n: usize, p: usize, forbid: Option<(usize, usize)>) -> Result<RepList> {
    Ok(free_representatives_counted(n, p, forbid)?.0)
}

fn free_representatives_counted(n: usize, p: usize, forbid: Option<(usize, usize)>) -> Result<(RepList, u64)> {
    let key = (n, p, forbid);
    if let Some(hit) = rep_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let (list, pruned) = if n == 0 {
        let h = Hypergraph::empty(0, p)?;
        (vec![(canon::canonical_code(&h)?, h)], 0)
    } else {
        let smaller = free_representatives(n - 1, p, forbid)?;
        let faces = bits::k_subsets(n - 1, p - 1);
        if faces.len() > 24 {
            return Err(Error::Guard(format!("vertex links over {} faces are too many to enumerate", faces.len())));
        }
        let per_rep: Vec<Result<(Vec<CanonCode>, u64)>> = smaller
            .par_iter()
            .map(|(_, rep)| {
                let mut codes = Vec::new();
                let mut pruned = 0;
                for link in 0u64..1 << faces.len() {
                    let new_edges = bits::Bits(link).map(|i| faces[i] | bit(n - 1));
                    let host = Hypergraph::new(n, p, rep.edges().iter().copied().chain(new_edges))?;
                    if let Some((t, r)) = forbid {
                        if counting::contains_disjoint_cliques(&host, t, r) {
                            pruned += 1;
                            continue;
                        }
                    }
                    codes.push(canon::canonical_code(&host)?);
                }
                Ok((codes, pruned))
            })
            .collect();
        let mut all = BTreeSet::new();
        let mut pruned = 0;
        for r in per_rep {
            let (codes, p_) = r?;
            all.extend(codes);
            pruned += p_;
        }
        let list: Result<Vec<_>> = all.into_iter().map(|c| Ok((c, canon::decode(n, p, c)?))).collect();
        (list?, pruned)
    };
    let list = Arc::new(list);
    rep_cache().lock().unwrap().insert(key, (list.clone(), pruned));
    Ok((list, pruned))
}

fn universal_count<H: Host + ?Sized>(h: &H) -> usize {
    let n = h.order();
    let p = h.uniformity();
    let all = bits::low_mask(n);
    (0..n)
        .filter(|&v| {
            bits::subsets_of_size(all & !bit(v), p - 1).into_iter().all(|f| h.link(f) & bit(v) != 0)
        })
        .count()
}

struct Objective<'a> {
    pattern: &'a Hypergraph,
    clique: bool,
}

impl<'a> Objective<'a> {
    fn new(pattern: &'a Hypergraph) -> Self {
        let clique = pattern.edge_count() as u64 == binomial(pattern.order(), pattern.uniformity());
        Objective { pattern, clique }
    }

    fn eval<H: Host + ?Sized>(&self, h: &H) -> Result<u64> {
        if self.clique {
            Ok(counting::count_cliques(h, self.pattern.order()))
        } else {
            counting::count_copies(self.pattern, h)
        }
    }
}

/// Best value and the smallest canonical codes attaining it.
#[derive(Default)]
struct Best {
    value: Option<u64>,
    codes: BTreeSet<CanonCode>,
    stats: OracleStats,
}

impl Best {
    fn offer(&mut self, value: u64, code: impl FnOnce() -> Result<CanonCode>, cap: usize) -> Result<()> {
        match self.value {
            Some(v) if value < v => return Ok(()),
            Some(v) if value == v => {}
            _ => {
                self.value = Some(value);
                self.codes.clear();
            }
        }
        if cap == 0 {
            return Ok(());
        }
        let c = code()?;
        if self.codes.len() < cap {
            self.codes.insert(c);
        } else if c < *self.codes.last().unwrap() && self.codes.insert(c) {
            self.codes.pop_last();
        }
        Ok(())
    }

    fn merge(mut self, other: Best, cap: usize) -> Best {
        self.stats.add(&other.stats);
        match (self.value, other.value) {
            (_, None) => {}
            (None, _) => {
                self.value = other.value;
                self.codes = other.codes;
            }
            (Some(a), Some(b)) if b > a => {
                self.value = other.value;
                self.codes = other.codes;
            }
            (Some(a), Some(b)) if a == b => {
                self.codes.extend(other.codes);
                while self.codes.len() > cap {
                    self.codes.pop_last();
                }
            }
            _ => {}
        }
        self
    }
}

/// `max 𝒩(pattern, G)` over `tK_r^p`-free `n`-vertex hosts `G` meeting the
/// constraints.
pub fn brute_force_ex(n: usize, pattern: &Hypergraph, t: usize, r: usize, cfg: &OracleConfig) -> Result<OracleResult> {
    let p = pattern.uniformity();
    if t < 1 || r < p {
        return Err(Error::Precondition(format!("needs t >= 1 and r >= p; got t = {t}, r = {r}, p = {p}")));
    }
    if pattern.order() > counting::MAX_PATTERN_VERTICES {
        return Err(Error::PatternTooLarge { got: pattern.order(), max: counting::MAX_PATTERN_VERTICES });
    }
    let start = Instant::now();
    let best = match cfg.mode.resolve(n, p) {
        Mode::Raw => {
            check_raw(n, p, cfg.allow_large)?;
            run_in_pool(cfg.workers, || raw_search(n, pattern, t, r, cfg))??
        }
        _ => {
            check_dedup(n, p, cfg.allow_large)?;
            run_in_pool(cfg.workers, || dedup_search(n, pattern, t, r, cfg))??
        }
    };
    let witnesses: Result<Vec<Hypergraph>> = best.codes.iter().map(|&c| canon::decode(n, p, c)).collect();
    Ok(OracleResult { value: best.value.unwrap_or(0), witnesses: witnesses?, stats: best.stats, elapsed: start.elapsed() })
}

fn dedup_search(n: usize, pattern: &Hypergraph, t: usize, r: usize, cfg: &OracleConfig) -> Result<Best> {
    let (reps, pruned) = free_representatives_counted(n, pattern.uniformity(), Some((t, r)))?;
    let objective = Objective::new(pattern);
    let mut best = Best::default();
    best.stats.pruned = pruned;
    for (code, h) in reps.iter() {
        best.stats.scanned += 1;
        if universal_count(h) < cfg.universal {
            continue;
        }
        best.stats.admissible += 1;
        best.offer(objective.eval(h)?, || Ok(*code), cfg.witness_cap)?;
    }
    Ok(best)
}

/// Number of leading edge slots fixed per shard.
const SHARD_DEPTH: usize = 10;

struct RawSearch<'a> {
    slots: Vec<u64>,
    t: usize,
    r: usize,
    universal: usize,
    cap: usize,
    objective: Objective<'a>,
}

impl RawSearch<'_> {
    /// Adds slot `i` if that keeps the host free.
    fn try_insert(&self, table: &mut LinkTable, i: usize) -> bool {
        let e = self.slots[i];
        table.insert(e);
        if counting::edge_in_clique(table, e, self.r) && counting::contains_disjoint_cliques(table, self.t, self.r) {
            table.remove(e);
            return false;
        }
        true
    }

    fn prefixes(&self, table: &mut LinkTable, i: usize, depth: usize, out: &mut Vec<(usize, LinkTable)>, pruned: &mut u64) {
        if i == depth {
            out.push((i, table.clone()));
            return;
        }
        if self.try_insert(table, i) {
            self.prefixes(table, i + 1, depth, out, pruned);
            table.remove(self.slots[i]);
        } else {
            *pruned += 1;
        }
        self.prefixes(table, i + 1, depth, out, pruned);
    }

    fn walk(&self, table: &mut LinkTable, i: usize, best: &mut Best) -> Result<()> {
        if i == self.slots.len() {
            best.stats.scanned += 1;
            if universal_count(table) < self.universal {
                return Ok(());
            }
            best.stats.admissible += 1;
            let value = self.objective.eval(table)?;
            return best.offer(value, || canon::canonical_code(&Hypergraph::from_table(table.clone())), self.cap);
        }
        if self.try_insert(table, i) {
            self.walk(table, i + 1, best)?;
            table.remove(self.slots[i]);
        } else {
            best.stats.pruned += 1;
        }
        self.walk(table, i + 1, best)
    }
}

fn raw_search(n: usize, pattern: &Hypergraph, t: usize, r: usize, cfg: &OracleConfig) -> Result<Best> {
    let p = pattern.uniformity();
    let search = RawSearch {
        slots: bits::k_subsets(n, p),
        t,
        r,
        universal: cfg.universal,
        cap: cfg.witness_cap,
        objective: Objective::new(pattern),
    };
    let depth = SHARD_DEPTH.min(search.slots.len());
    let mut shards = Vec::new();
    let mut pruned = 0;
    search.prefixes(&mut LinkTable::new(n, p)?, 0, depth, &mut shards, &mut pruned);
    let results: Vec<Result<Best>> = shards
        .into_par_iter()
        .map(|(i, mut table)| {
            let mut best = Best::default();
            search.walk(&mut table, i, &mut best)?;
            Ok(best)
        })
        .collect();
    let mut total = Best::default();
    total.stats.pruned = pruned;
    for b in results {
        total = total.merge(b?, cfg.witness_cap);
    }
    Ok(total)
}

/// A `K_{x+1}^p`-free host on `m` vertices with the most `K_x^p`, and that
/// count. Branch and bound over edge slots; the bound is the count with
/// every remaining slot added.
pub fn search_tail_t(m: usize, x: usize, p: usize) -> Result<(Hypergraph, u64)> {
    if p < 2 {
        return Err(Error::Invalid(format!("uniformity {p} < 2")));
    }
    if p >= 3 && m > TAIL_MAX_ORDER {
        return Err(Error::Guard(format!("tail search for p = {p} needs m <= {TAIL_MAX_ORDER}, got {m}")));
    }
    if p == 2 && binomial(m, 2) > RAW_MAX_SLOTS {
        return Err(Error::Guard(format!("tail search for p = 2 needs C(m,2) <= {RAW_MAX_SLOTS}, got m = {m}")));
    }
    if x + 1 < p {
        // every (x+1)-set counts as a clique
        if m > x {
            return Err(Error::Precondition(format!("no {m}-vertex host avoids K_{}^{p}", x + 1)));
        }
        let h = Hypergraph::empty(m, p)?;
        let value = counting::count_cliques(&h, x);
        return Ok((h, value));
    }
    struct Tail {
        slots: Vec<u64>,
        x: usize,
        best: u64,
        best_edges: Vec<u64>,
    }
    impl Tail {
        fn go(&mut self, table: &mut LinkTable, i: usize) {
            let mut full = table.clone();
            for &e in &self.slots[i..] {
                full.insert(e);
            }
            if counting::count_cliques(&full, self.x) <= self.best {
                return;
            }
            if i == self.slots.len() {
                // the bound was the value itself and beat the best
                self.best = counting::count_cliques(table, self.x);
                self.best_edges = table.edges();
                return;
            }
            let e = self.slots[i];
            table.insert(e);
            if !counting::edge_in_clique(table, e, self.x + 1) {
                self.go(table, i + 1);
            }
            table.remove(e);
            self.go(table, i + 1);
        }
    }
    let mut table = LinkTable::new(m, p)?;
    let empty_value = counting::count_cliques(&table, x);
    let mut search = Tail { slots: bits::k_subsets(m, p), x, best: empty_value, best_edges: Vec::new() };
    search.go(&mut table, 0);
    let h = Hypergraph::new(m, p, search.best_edges)?;
    let value = counting::count_cliques(&h, x);
    Ok((h, value))
}

/// Tail supplier for constructions with `p ≥ 3`.
pub fn default_tail(m: usize, x: usize, p: usize) -> Result<Hypergraph> {
    search_tail_t(m, x, p).map(|(h, _)| h)
}

#[derive(Clone, Debug)]
pub struct Theorem1Row {
    pub n: usize,
    pub oracle: u64,
    pub formula: u64,
    pub witness: Option<Hypergraph>,
}

impl Theorem1Row {
    pub fn equal(&self) -> bool {
        self.oracle == self.formula
    }
}

#[derive(Clone, Debug)]
pub struct Theorem1Report {
    pub s: usize,
    pub r: usize,
    pub t: usize,
    pub rows: Vec<Theorem1Row>,
    /// Oracle value at least the construction's at every `n`.
    pub lower_bound_holds: bool,
    /// Smallest `n` from which equality holds through the end of the range.
    pub onset: Option<usize>,
}

/// Oracle against closed form for `ex(n, K_s, tK_r)` over a range of `n`.
pub fn verify_theorem1(ns: std::ops::RangeInclusive<usize>, s: usize, r: usize, t: usize, cfg: &OracleConfig) -> Result<Theorem1Report> {
    let pattern = Hypergraph::complete(s, 2)?;
    let mut rows = Vec::new();
    for n in ns {
        let res = brute_force_ex(n, &pattern, t, r, cfg)?;
        let formula = ex_closed_value(&ProblemParams::graph(n, s, r, t)?)?;
        rows.push(Theorem1Row { n, oracle: res.value, formula, witness: res.witnesses.into_iter().next() });
    }
    let lower_bound_holds = rows.iter().all(|row| row.oracle >= row.formula);
    let onset = rows.iter().rposition(|row| !row.equal()).map_or(rows.first().map(|r| r.n), |i| rows.get(i + 1).map(|r| r.n));
    Ok(Theorem1Report { s, r, t, rows, lower_bound_holds, onset })
}

#[derive(Clone, Debug)]
pub struct UniversalReport {
    pub unconstrained: OracleResult,
    pub constrained: OracleResult,
}

impl UniversalReport {
    /// Some extremal host has `t − 1` universal vertices.
    pub fn holds(&self) -> bool {
        self.constrained.value == self.unconstrained.value
    }
}

/// Compares the unconstrained optimum with the optimum over hosts having
/// `t − 1` universal vertices.
pub fn verify_universal_vertices(n: usize, pattern: &Hypergraph, t: usize, r: usize, cfg: &OracleConfig) -> Result<UniversalReport> {
    if t < 2 {
        return Err(Error::Precondition(format!("needs t >= 2, got {t}")));
    }
    if counting::count_cliques(pattern, r) > 0 {
        return Err(Error::Precondition(format!("pattern contains K_{r}")));
    }
    let unconstrained = brute_force_ex(n, pattern, t, r, &OracleConfig { universal: 0, ..cfg.clone() })?;
    let constrained = brute_force_ex(n, pattern, t, r, &OracleConfig { universal: t - 1, ..cfg.clone() })?;
    Ok(UniversalReport { unconstrained, constrained })
}

/// `K_{r}`-free graphs on `m` vertices, one per isomorphism class.
pub fn clique_free_graphs(m: usize, r: usize) -> Result<Vec<Graph>> {
    free_representatives(m, 2, Some((1, r)))?.iter().map(|(_, h)| h.to_graph()).collect()
}
