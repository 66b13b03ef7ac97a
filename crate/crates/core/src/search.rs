//! Exhaustive and sampled verification campaigns over small abelian groups.
//!
//! Exhaustive mode visits every ordered pair of subsets containing `0`
//! (every checked statement is translation invariant), ordered by the bit
//! mask of `A`, then of `B`, then by `t`. Sampled mode draws each element
//! independently with probability 1/2, rejecting empty sets, from a ChaCha8
//! stream keyed by `(seed, group index, sample index)`.
//!
//! Work is split into contiguous index ranges evaluated in parallel; records
//! are merged back in canonical order, so the output does not depend on the
//! thread count.

use std::collections::{BTreeMap, HashSet};
use std::io::{self, Write};
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::group::{factorize, GroupSpec};
use crate::kernel::RepProfile;
use crate::ops::difference_counts;
use crate::set::GSet;
use crate::subgroup::{subgroup_lattice, SubgroupLattice, DEFAULT_LATTICE_MAX};
use crate::theorems::{Branch, CheckError, Pair, TheoremId, TheoremVerdict, DEFAULT_MAX_WITNESS_T};

/// Exhaustive mode visits `4^(n−1)` pairs per group of order `n`.
pub const EXHAUSTIVE_MAX_ORDER: usize = 12;
/// Largest group order accepted in sampled mode.
pub const SAMPLED_MAX_ORDER: usize = 1 << 12;
const CHUNK: u64 = 512;

/// One representative per isomorphism class of abelian groups of order
/// `≤ max_order`, in invariant-factor form `Z_{d1} × … × Z_{dk}` with
/// `d1 | d2 | … | dk`. Ordered by order, then by rank, then factor list.
pub fn enumerate_abelian_groups(max_order: usize) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        let mut classes: Vec<Vec<usize>> = vec![vec![]];
        for (p, e) in factorize(n) {
            let mut next = Vec::new();
            for lambda in partitions(e) {
                for prev in &classes {
                    next.push(merge_prime_part(prev, p, &lambda));
                }
            }
            classes = next;
        }
        let mut factors: Vec<Vec<usize>> =
            classes.into_iter().map(|c| if c.is_empty() { vec![1] } else { c }).collect();
        factors.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        out.extend(factors.iter().map(|f| GroupSpec::new(f).expect("small order")));
    }
    out
}

/// Partitions of `n` with parts in descending order.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Multiplies the `p`-primary part `λ` into ascending invariant factors.
fn merge_prime_part(prev: &[usize], p: usize, lambda: &[u32]) -> Vec<usize> {
    let len = prev.len().max(lambda.len());
    // Align both lists at the largest factor.
    (0..len)
        .map(|i| {
            let from_end = len - 1 - i;
            let old = if from_end < prev.len() { prev[prev.len() - 1 - from_end] } else { 1 };
            let exp = lambda.get(from_end).copied().unwrap_or(0);
            old * p.pow(exp)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "exhaustive" => Ok(Mode::Exhaustive),
            "sample" | "sampled" => Ok(Mode::Sampled),
            _ => Err(format!("unknown mode '{s}' (expected exhaustive|sample)")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignConfig {
    pub min_order: usize,
    pub max_order: usize,
    pub t_range: RangeInclusive<u32>,
    pub mode: Mode,
    pub samples_per_group: u64,
    pub seed: u64,
    pub checkers: Vec<TheoremId>,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    /// Keep wall-clock timings in records. Off by default so that reruns are
    /// byte-identical.
    pub timings: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            min_order: 1,
            max_order: 6,
            t_range: 1..=3,
            mode: Mode::Exhaustive,
            samples_per_group: 1000,
            seed: 0,
            checkers: TheoremId::ALL.to_vec(),
            threads: 0,
            timings: false,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<(), CampaignError> {
        let bad = |m: String| Err(CampaignError::Config(m));
        if self.max_order < 1 {
            return bad("max_order must be at least 1".into());
        }
        if self.min_order > self.max_order {
            return bad(format!("min_order {} exceeds max_order {}", self.min_order, self.max_order));
        }
        if *self.t_range.start() < 1 || self.t_range.start() > self.t_range.end() {
            return bad(format!("t range {:?} must be nonempty and start at 1 or more", self.t_range));
        }
        if *self.t_range.end() > DEFAULT_MAX_WITNESS_T {
            return bad(format!("t ≤ {DEFAULT_MAX_WITNESS_T} required by the witness search"));
        }
        match self.mode {
            Mode::Exhaustive if self.max_order > EXHAUSTIVE_MAX_ORDER => {
                Err(CampaignError::ResourceCeiling(format!("exhaustive mode needs max_order ≤ {EXHAUSTIVE_MAX_ORDER}")))
            }
            Mode::Sampled if self.max_order > SAMPLED_MAX_ORDER => {
                Err(CampaignError::ResourceCeiling(format!("sampled mode needs max_order ≤ {SAMPLED_MAX_ORDER}")))
            }
            _ => Ok(()),
        }
    }
}

fn as_list<S: Serializer>(s: &GSet, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(s.iter())
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignRecord {
    pub group: GroupSpec,
    #[serde(rename = "A", serialize_with = "as_list")]
    pub a: GSet,
    #[serde(rename = "B", serialize_with = "as_list")]
    pub b: GSet,
    pub t: u32,
    pub verdicts: Vec<TheoremVerdict>,
    /// `Σ_{i≤t}|A +_i B|` minus the weak bound (`2|A|+2|B|−4` at `t = 2`,
    /// `t|A|+t|B|−2t²+1` otherwise).
    pub tightness_gap: i64,
    pub elapsed_ns: u64,
}

impl CampaignRecord {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn verdict(&self, id: TheoremId) -> Option<&TheoremVerdict> {
        self.verdicts.iter().find(|v| v.theorem == id)
    }

    /// A `verify` command line reproducing the first failing verdict.
    pub fn reproducer(&self) -> String {
        let orders: Vec<String> = self.group.orders().iter().map(ToString::to_string).collect();
        let failing = self.verdicts.iter().find(|v| !v.holds).map_or("all", |v| v.theorem.name());
        format!(
            "addcomb verify --group {} --A \"{}\" --B \"{}\" --t {} --theorem {}",
            orders.join(","),
            self.a,
            self.b,
            self.t,
            failing
        )
    }
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("invalid campaign config: {0}")]
    Config(String),
    #[error("resource ceiling exceeded: {0}")]
    ResourceCeiling(String),
    #[error("counterexample found; reproduce with: {reproducer}")]
    Counterexample { record: Box<CampaignRecord>, reproducer: String },
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// Counts accumulated over a campaign.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub groups: u64,
    pub pairs: u64,
    pub records: u64,
    /// Theorem name → branch → count.
    pub branches: BTreeMap<String, BTreeMap<String, u64>>,
    /// Records failing the weak bound of the main theorem.
    pub weak_failures: u64,
    /// Witness deletion count `l` → occurrences (main theorem).
    pub witness_l: BTreeMap<usize, u64>,
    /// Records with `t = 2` and zero tightness gap.
    pub tight_t2: u64,
}

impl CampaignSummary {
    fn absorb(&mut self, r: &CampaignRecord) {
        self.records += 1;
        for v in &r.verdicts {
            *self.branches.entry(v.theorem.name().into()).or_default().entry(v.branch.to_string()).or_default() += 1;
            if v.theorem == TheoremId::Main {
                if v.branch != Branch::WeakBound {
                    self.weak_failures += 1;
                }
                if let Some(w) = &v.witness {
                    *self.witness_l.entry(w.l).or_default() += 1;
                }
            }
        }
        if r.t == 2 && r.tightness_gap == 0 {
            self.tight_t2 += 1;
        }
    }

    pub fn count(&self, id: TheoremId, branch: Branch) -> u64 {
        self.branches.get(id.name()).and_then(|m| m.get(&branch.to_string())).copied().unwrap_or(0)
    }
}

/// Per-group data shared by all pairs.
struct GroupContext {
    group: GroupSpec,
    lattice: Option<SubgroupLattice>,
    cyclic: bool,
}

impl GroupContext {
    fn new(group: GroupSpec) -> Self {
        let lattice = (group.order() <= DEFAULT_LATTICE_MAX).then(|| subgroup_lattice(&group).expect("small group"));
        let cyclic = group.is_cyclic();
        GroupContext { group, lattice, cyclic }
    }
}

/// Runs every configured checker on one pair, producing one record per `t`.
/// Checkers that do not depend on `t` are attached to the first record.
pub fn evaluate_pair(a: &GSet, b: &GSet, config: &CampaignConfig) -> Result<Vec<CampaignRecord>, CampaignError> {
    let ctx = GroupContext::new(a.group().clone());
    evaluate(&ctx, a, b, config)
}

fn evaluate(
    ctx: &GroupContext,
    a: &GSet,
    b: &GSet,
    cfg: &CampaignConfig,
) -> Result<Vec<CampaignRecord>, CampaignError> {
    let on: HashSet<TheoremId> = cfg.checkers.iter().copied().collect();
    let min = a.len().min(b.len()) as u32;
    let t_lo = *cfg.t_range.start();
    let t_hi = (*cfg.t_range.end()).min(min);
    if t_lo > t_hi {
        return Ok(Vec::new());
    }
    let start = std::time::Instant::now();
    let pair = Pair::new(a, b)?;
    // The energy statements are phrased with |A| ≥ |B|.
    let energy_pair = if on.contains(&TheoremId::Energy) || on.contains(&TheoremId::EnergyUpper) {
        let p = if a.len() >= b.len() { pair.clone() } else { Pair::new(b, a)? };
        let diffs = difference_counts(p.a(), p.b()).map_err(CheckError::from)?;
        Some((p, diffs))
    } else {
        None
    };
    let (na, nb) = (a.len() as i64, b.len() as i64);
    let mut out = Vec::with_capacity((t_hi - t_lo + 1) as usize);
    for t in t_lo..=t_hi {
        let first = t == t_lo;
        let mut vs = Vec::new();
        if first && on.contains(&TheoremId::Kneser) {
            vs.push(pair.kneser());
        }
        if on.contains(&TheoremId::Pollard) {
            vs.push(pair.pollard(t)?);
        }
        if on.contains(&TheoremId::Chowla) && ctx.cyclic {
            vs.push(pair.chowla(t)?);
        }
        if let (true, Some(lat)) = (on.contains(&TheoremId::GreenRuzsa), &ctx.lattice) {
            vs.push(pair.green_ruzsa(t, lat));
        }
        if on.contains(&TheoremId::Main) || on.contains(&TheoremId::Remark) {
            let main = pair.main_theorem(t)?;
            if on.contains(&TheoremId::Remark) {
                vs.push(pair.double_rep_remark(t, &main));
            }
            if on.contains(&TheoremId::Main) {
                vs.push(main);
            }
        }
        if first && min >= 2 && on.contains(&TheoremId::T2) {
            vs.push(pair.t2_theorem()?);
        }
        if let (true, true, Some(lat)) = (first && min >= 2, on.contains(&TheoremId::Corollary), &ctx.lattice) {
            vs.push(pair.corollary(lat)?);
        }
        if first && on.contains(&TheoremId::Mult) {
            vs.push(pair.multiplicity());
        }
        if first && on.contains(&TheoremId::Critical) {
            vs.push(pair.critical_pair());
        }
        if let Some((ep, diffs)) = &energy_pair {
            if on.contains(&TheoremId::Energy) {
                let per_k = (1..=min).map(|k| ep.energy_lemma(diffs, k, t).0);
                vs.push(aggregate(TheoremId::Energy, per_k));
            }
            if first && on.contains(&TheoremId::EnergyUpper) {
                vs.push(aggregate(TheoremId::EnergyUpper, energy_upper_sweep(ep, diffs, min)));
            }
        }
        vs.sort_by_key(|v| v.theorem);
        let ti = t as i64;
        let weak = if t == 2 { 2 * na + 2 * nb - 4 } else { ti * na + ti * nb - 2 * ti * ti + 1 };
        let tightness_gap = pair.profile().pollard_sum(t) as i64 - weak;
        out.push(CampaignRecord {
            group: ctx.group.clone(),
            a: a.clone(),
            b: b.clone(),
            t,
            verdicts: vs,
            tightness_gap,
            elapsed_ns: 0,
        });
    }
    if cfg.timings {
        let each = start.elapsed().as_nanos() as u64 / out.len() as u64;
        out.iter_mut().for_each(|r| r.elapsed_ns = each);
    } else {
        for r in &mut out {
            r.verdicts.iter_mut().for_each(|v| v.elapsed_ns = 0);
        }
    }
    Ok(out)
}

fn energy_upper_sweep<'a>(p: &'a Pair, diffs: &'a RepProfile, min: u32) -> impl Iterator<Item = TheoremVerdict> + 'a {
    (1..=min).map(move |k| p.energy_upper(diffs, &diffs.at_least(k + 1), k))
}

/// Folds per-`k` verdicts into one: holds iff all hold; the reported sides
/// are those of the first violation, else of the smallest slack.
fn aggregate(id: TheoremId, vs: impl Iterator<Item = TheoremVerdict>) -> TheoremVerdict {
    let mut elapsed = 0;
    let mut pick: Option<TheoremVerdict> = None;
    for v in vs {
        elapsed += v.elapsed_ns;
        if v.branch == Branch::NotApplicable {
            continue;
        }
        let better = match &pick {
            None => true,
            Some(p) => p.holds && (!v.holds || v.lhs - v.rhs < p.lhs - p.rhs),
        };
        if better {
            pick = Some(v);
        }
    }
    let mut v = pick.unwrap_or(TheoremVerdict {
        theorem: id,
        holds: true,
        branch: Branch::NotApplicable,
        lhs: 0,
        rhs: 0,
        witness: None,
        elapsed_ns: 0,
    });
    v.elapsed_ns = elapsed;
    v
}

/// Pairs of one group, addressed by index.
enum PairSource {
    /// `A = {0} ∪ (mask_a << 1)`, index `= mask_a · 2^(n−1) + mask_b`.
    Exhaustive {
        bits: u32,
    },
    Sampled {
        seed: u64,
        group_index: u64,
    },
}

impl PairSource {
    fn pair(&self, group: &GroupSpec, idx: u64) -> (GSet, GSet) {
        match *self {
            PairSource::Exhaustive { bits } => {
                let mb = idx & ((1u64 << bits) - 1);
                let ma = idx >> bits;
                (GSet::from_mask(group, 1 | ma << 1), GSet::from_mask(group, 1 | mb << 1))
            }
            PairSource::Sampled { seed, group_index } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(group_index << 40 | idx);
                let mut draw = || loop {
                    let s = GSet::from_fn(group, |_| rng.gen::<bool>());
                    if !s.is_empty() {
                        return s;
                    }
                };
                let a = draw();
                (a, draw())
            }
        }
    }
}

/// Runs the campaign, passing each record to `sink` in canonical order.
/// Aborts with [`CampaignError::Counterexample`] at the first record with a
/// failing verdict (which is still passed to `sink` first).
pub fn run_campaign(
    config: &CampaignConfig,
    sink: &mut dyn FnMut(&CampaignRecord) -> io::Result<()>,
) -> Result<CampaignSummary, CampaignError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| CampaignError::Pool(e.to_string()))?;
    let threads = pool.current_num_threads() as u64;
    let mut summary = CampaignSummary::default();
    let groups = enumerate_abelian_groups(config.max_order);
    for (gi, group) in groups.into_iter().enumerate() {
        if group.order() < config.min_order {
            continue;
        }
        summary.groups += 1;
        let n = group.order();
        let (source, total) = match config.mode {
            Mode::Exhaustive => {
                let bits = (n - 1) as u32;
                (PairSource::Exhaustive { bits }, 1u64 << (2 * bits))
            }
            Mode::Sampled => {
                (PairSource::Sampled { seed: config.seed, group_index: gi as u64 }, config.samples_per_group)
            }
        };
        let ctx = GroupContext::new(group);
        let batch = CHUNK * threads * 4;
        let mut lo = 0u64;
        while lo < total {
            let hi = (lo + batch).min(total);
            let chunks: Vec<(u64, u64)> = (lo..hi).step_by(CHUNK as usize).map(|c| (c, (c + CHUNK).min(hi))).collect();
            let results: Vec<Result<Vec<CampaignRecord>, CampaignError>> = pool.install(|| {
                chunks
                    .par_iter()
                    .map(|&(c0, c1)| {
                        let mut recs = Vec::new();
                        for idx in c0..c1 {
                            let (a, b) = source.pair(&ctx.group, idx);
                            recs.extend(evaluate(&ctx, &a, &b, config)?);
                        }
                        Ok(recs)
                    })
                    .collect()
            });
            for res in results {
                for rec in res? {
                    summary.absorb(&rec);
                    sink(&rec)?;
                    if !rec.holds() {
                        let reproducer = rec.reproducer();
                        return Err(CampaignError::Counterexample { record: Box::new(rec), reproducer });
                    }
                }
            }
            summary.pairs += hi - lo;
            lo = hi;
        }
    }
    Ok(summary)
}

/// Sink writing one JSON object per line, flushed per record.
pub fn jsonl_sink<W: Write>(mut w: W) -> impl FnMut(&CampaignRecord) -> io::Result<()> {
    move |rec| {
        serde_json::to_writer(&mut w, rec)?;
        w.write_all(b"\n")?;
        w.flush()
    }
}
