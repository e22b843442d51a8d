//! Truncations `K_N ∪ ⋃_{i ≤ (N, 2^N)} Ẽ_i` of the weakly homogeneous set
//! and their JSON form.

use num::{FromPrimitive, Signed};
use serde::{Deserialize, Serialize};

use super::{e_block, k_intervals, k_schedule, rational_union, to_f64, CantorIndex, KSchedule, Rational, RationalInterval};
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CantorSpec {
    pub levels: u32,
    pub seed_k: u64,
}

impl Default for CantorSpec {
    fn default() -> Self {
        Self { levels: 1, seed_k: 2 }
    }
}

/// `Ẽ_i = E_{n,j,m(i)}` for one index.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub index: CantorIndex,
    pub k: u64,
    pub m: u64,
    pub intervals: Vec<RationalInterval>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmittedBlock {
    pub n: u32,
    pub j: u64,
    pub k: u64,
    pub m: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSet {
    spec: CantorSpec,
    schedule: KSchedule,
    k_part: Vec<RationalInterval>,
    blocks: Vec<Block>,
    omitted: Vec<OmittedBlock>,
}

impl TruncatedSet {
    pub fn spec(&self) -> CantorSpec {
        self.spec
    }

    pub fn schedule(&self) -> &KSchedule {
        &self.schedule
    }

    /// The `2^N` intervals of `K_N`.
    pub fn k_part(&self) -> &[RationalInterval] {
        &self.k_part
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Blocks too deep to enumerate; empty for a complete build.
    pub fn omitted(&self) -> &[OmittedBlock] {
        &self.omitted
    }

    pub fn is_complete(&self) -> bool {
        self.omitted.is_empty()
    }

    pub fn rational_union(&self) -> Vec<RationalInterval> {
        let mut all = self.k_part.clone();
        all.extend(self.blocks.iter().flat_map(|b| b.intervals.iter().cloned()));
        rational_union(all)
    }

    /// Built blocks only, without `K_N`.
    pub fn blocks_union(&self) -> Vec<RationalInterval> {
        rational_union(self.blocks.iter().flat_map(|b| b.intervals.iter().cloned()).collect())
    }

    pub fn union(&self) -> IntervalUnion {
        to_union(&self.rational_union())
    }

    /// Largest `|fl(p) − p|` over all endpoints of [`Self::rational_union`].
    pub fn max_endpoint_error(&self) -> f64 {
        self.rational_union()
            .iter()
            .flat_map(|i| [endpoint_error(&i.left), endpoint_error(&i.right)])
            .fold(0.0, f64::max)
    }

    pub fn document(&self) -> SetDocument {
        let exact = self.rational_union();
        SetDocument {
            cantor: Some(self.spec),
            intervals: exact.iter().map(|i| [to_f64(&i.left), to_f64(&i.right)]).collect(),
            rational: exact.iter().map(|i| [i.left.to_string(), i.right.to_string()]).collect(),
            endpoint_errors: exact
                .iter()
                .map(|i| [endpoint_error(&i.left), endpoint_error(&i.right)])
                .collect(),
            max_endpoint_error: self.max_endpoint_error(),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockDocument {
                    n: b.index.n(),
                    j: b.index.j(),
                    k: b.k,
                    m: b.m,
                    rational: b.intervals.iter().map(|i| [i.left.to_string(), i.right.to_string()]).collect(),
                })
                .collect(),
            omitted: self.omitted.clone(),
        }
    }
}

pub(crate) fn to_union(v: &[RationalInterval]) -> IntervalUnion {
    IntervalUnion::from_pairs(v.iter().map(|i| (to_f64(&i.left), to_f64(&i.right))))
        .expect("rational intervals are ordered")
}

fn endpoint_error(q: &Rational) -> f64 {
    let back = Rational::from_f64(to_f64(q)).expect("finite");
    to_f64(&(back - q).abs())
}

/// Emitted set JSON: floating endpoints plus exact `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetDocument {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cantor: Option<CantorSpec>,
    pub intervals: Vec<[f64; 2]>,
    pub rational: Vec<[String; 2]>,
    pub endpoint_errors: Vec<[f64; 2]>,
    pub max_endpoint_error: f64,
    /// The blocks separately; most of them lie inside the level-`N` part.
    #[serde(default)]
    pub blocks: Vec<BlockDocument>,
    #[serde(default)]
    pub omitted: Vec<OmittedBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDocument {
    pub n: u32,
    pub j: u64,
    pub k: u64,
    pub m: u64,
    pub rational: Vec<[String; 2]>,
}

fn build(spec: CantorSpec, cap: u32, strict: bool) -> Result<TruncatedSet> {
    if spec.levels == 0 {
        return Err(Error::InvalidSet("truncation level must be at least 1".into()));
    }
    let k_part = k_intervals(spec.levels, cap)?;
    let schedule = k_schedule(spec.seed_k, CantorIndex::last_of(spec.levels)?)?;
    let mut blocks = Vec::new();
    let mut omitted = Vec::new();
    for (index, k) in schedule.entries() {
        let m = k - index.n() as u64;
        if k > cap as u64 {
            if strict {
                return Err(Error::DepthCap { depth: k, cap });
            }
            omitted.push(OmittedBlock { n: index.n(), j: index.j(), k, m });
            continue;
        }
        blocks.push(Block {
            index,
            k,
            m,
            intervals: e_block(index, m, cap)?,
        });
    }
    Ok(TruncatedSet {
        spec,
        schedule,
        k_part,
        blocks,
        omitted,
    })
}

/// The level-`N` truncation; fails if any block needs depth beyond `cap`.
pub fn build_set(spec: CantorSpec, cap: u32) -> Result<TruncatedSet> {
    build(spec, cap, true)
}

/// As [`build_set`], listing too-deep blocks in `omitted` instead.
pub fn build_set_partial(spec: CantorSpec, cap: u32) -> Result<TruncatedSet> {
    build(spec, cap, false)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetInput {
    intervals: Option<Vec<[f64; 2]>>,
    cantor: Option<CantorSpec>,
    // Accepted so emitted documents read back.
    #[serde(default)]
    rational: Option<serde_json::Value>,
    #[serde(default)]
    endpoint_errors: Option<serde_json::Value>,
    #[serde(default)]
    max_endpoint_error: Option<serde_json::Value>,
    #[serde(default)]
    blocks: Option<serde_json::Value>,
    #[serde(default)]
    omitted: Option<Vec<OmittedBlock>>,
}

/// Reads `{"intervals": ...}` or `{"cantor": {...}}`; explicit intervals win.
pub fn set_from_json(s: &str, cap: u32) -> Result<IntervalUnion> {
    let input: SetInput = serde_json::from_str(s)?;
    let _ = (&input.rational, &input.endpoint_errors, &input.max_endpoint_error, &input.blocks);
    if let Some(iv) = input.intervals {
        if input.omitted.is_some_and(|o| !o.is_empty()) {
            return Err(Error::InvalidSet("set document has omitted blocks".into()));
        }
        return IntervalUnion::from_pairs(iv.into_iter().map(|[a, b]| (a, b)));
    }
    match input.cantor {
        Some(spec) => Ok(build_set(spec, cap)?.union()),
        None => Err(Error::InvalidSet("expected \"intervals\" or \"cantor\"".into())),
    }
}
