//! Partitioned verification of `|ζ(1/2+it)|` on a t-range.
//!
//! The range `[a₀, b₀]` is cut into `I_q = [q/Q, (q+1)/Q]`. On each piece the
//! Euler–Maclaurin enclosure gives an envelope `b₁ ≥ max |ζ(1/2+it)|`, which
//! is compared with a threshold evaluated at the left endpoint `q/Q`.

use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::interval::Interval;
use crate::zeta::{em_zeta_with, EmConfig, TermTable};

/// What the envelope of each subinterval is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Threshold {
    /// `b₁ ≤ bound`.
    Constant { bound: f64 },
    /// `b₁ / ((q/Q)^{1/6} log(q/Q)) ≤ c`; needs `q/Q > 1`.
    PowerLog { c: f64 },
}

impl Threshold {
    fn limit(self) -> Interval {
        let v = match self {
            Threshold::Constant { bound } => bound,
            Threshold::PowerLog { c } => c,
        };
        // the decimal the user typed lies within one ulp of `v`
        Interval::new(v.next_down(), v.next_up()).expect("finite threshold")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionSpec {
    /// `a₀·Q`.
    pub q_start: i64,
    /// `b₀·Q` (exclusive end of the q range).
    pub q_end: i64,
    /// Subintervals per unit length.
    pub denominator: u64,
    pub em: EmConfig,
    pub threshold: Threshold,
    /// Depth of fail-wide bisection.
    pub max_retries: u32,
}

pub const DEFAULT_RETRIES: u32 = 4;

impl PartitionSpec {
    pub fn new(
        a0: f64,
        b0: f64,
        denominator: u64,
        em: EmConfig,
        threshold: Threshold,
    ) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::Hypothesis("Q must be positive".into()));
        }
        let scale = |x: f64| -> Result<i64> {
            let v = x * denominator as f64;
            if !v.is_finite() || v.fract() != 0.0 || v.abs() > 2f64.powi(52) {
                return Err(Error::Hypothesis(format!(
                    "{x} * Q = {v} is not an exact integer"
                )));
            }
            Ok(v as i64)
        };
        let (q_start, q_end) = (scale(a0)?, scale(b0)?);
        if q_end < q_start {
            return Err(Error::InvalidInterval { lo: a0, hi: b0 });
        }
        let spec = PartitionSpec {
            q_start,
            q_end,
            denominator,
            em,
            threshold,
            max_retries: DEFAULT_RETRIES,
        };
        if let Threshold::PowerLog { .. } = threshold {
            if q_start < q_end && spec.left_endpoint(q_start).lo() <= 1.0 {
                return Err(Error::Hypothesis(
                    "the t^(1/6) log t threshold needs a0 > 1".into(),
                ));
            }
        }
        Ok(spec)
    }

    /// `[0, 3]`, `Q = 2¹⁴`, `⌈60(t+1)⌉` terms, envelope `≤ 1.461`.
    pub fn low_range() -> Self {
        Self::new(
            0.0,
            3.0,
            1 << 14,
            EmConfig::sixty_t_plus_one(),
            Threshold::Constant { bound: 1.461 },
        )
        .expect("valid")
    }

    /// `[3, 200]`, `Q = 2⁷`, `⌈2t⌉` terms, ratio `≤ 0.63`.
    pub fn mid_range() -> Self {
        Self::new(
            3.0,
            200.0,
            1 << 7,
            EmConfig::twice_t(),
            Threshold::PowerLog { c: 0.63 },
        )
        .expect("valid")
    }

    pub fn a0(&self) -> f64 {
        self.q_start as f64 / self.denominator as f64
    }

    pub fn b0(&self) -> f64 {
        self.q_end as f64 / self.denominator as f64
    }

    pub fn len(&self) -> u64 {
        (self.q_end - self.q_start) as u64
    }

    pub fn is_empty(&self) -> bool {
        self.q_end == self.q_start
    }

    fn left_endpoint(&self, q: i64) -> Interval {
        Interval::from_ratio(q, self.denominator as i64)
    }

    /// `I_q = [q/Q, (q+1)/Q]` (outward-rounded when `Q` is not a power of 2).
    pub fn subinterval(&self, q: i64) -> Interval {
        let d = self.denominator as i64;
        let a = Interval::from_ratio(q, d);
        let b = Interval::from_ratio(q + 1, d);
        Interval::new(a.lo(), b.hi()).expect("ordered")
    }

    /// SHA-256 of the canonical JSON encoding, hex.
    pub fn config_hash(&self) -> String {
        crate::report::config_hash(self).expect("serializable")
    }

    fn term_table(&self) -> Result<TermTable> {
        if self.is_empty() {
            return Ok(TermTable::new(0));
        }
        let whole = self
            .subinterval(self.q_start)
            .hull(self.subinterval(self.q_end - 1));
        Ok(TermTable::new(self.em.length_for(whole)?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubintervalRecord {
    pub q: i64,
    #[serde(with = "crate::report::decimal")]
    pub t_lo: f64,
    #[serde(with = "crate::report::decimal")]
    pub t_hi: f64,
    #[serde(with = "crate::report::decimal")]
    pub envelope_lo: f64,
    /// `b₁`, an upper bound for `|ζ(1/2+it)|` on `I_q`.
    #[serde(with = "crate::report::decimal")]
    pub envelope_hi: f64,
    /// `b₁ / ((q/Q)^{1/6} log(q/Q))`, upper endpoint, for the power-log threshold.
    #[serde(with = "crate::report::decimal::option")]
    pub ratio: Option<f64>,
    pub pass: bool,
    /// Number of pieces evaluated (1 unless the fail-wide retry kicked in).
    pub pieces: u32,
    pub terms: u64,
    pub note: Option<String>,
}

struct PieceResult {
    env_lo: f64,
    env_hi: f64,
    pass: bool,
    pieces: u32,
    terms: u64,
    note: Option<String>,
}

fn check_piece(
    piece: Interval,
    depth: u32,
    spec: &PartitionSpec,
    limit: Interval,
    denom: Option<Interval>,
    table: &TermTable,
) -> PieceResult {
    let outcome = em_zeta_with(piece, &spec.em, table).map(|e| {
        let ok = match denom {
            None => e.modulus.hi() <= limit.lo(),
            Some(d) => Interval::point(e.modulus.hi())
                .div(d)
                .map(|r| r.hi() <= limit.lo())
                .unwrap_or(false),
        };
        (e, ok)
    });
    let (first, note) = match outcome {
        Ok((e, true)) => {
            return PieceResult {
                env_lo: e.modulus.lo(),
                env_hi: e.modulus.hi(),
                pass: true,
                pieces: 1,
                terms: e.terms,
                note: None,
            }
        }
        Ok((e, false)) => (Some(e), None),
        Err(err) => (None, Some(err.to_string())),
    };
    if depth < spec.max_retries && !piece.is_point() {
        let (x, y) = piece.split();
        let a = check_piece(x, depth + 1, spec, limit, denom, table);
        let b = check_piece(y, depth + 1, spec, limit, denom, table);
        return PieceResult {
            env_lo: a.env_lo.min(b.env_lo),
            env_hi: a.env_hi.max(b.env_hi),
            pass: a.pass && b.pass,
            pieces: a.pieces + b.pieces,
            terms: a.terms.max(b.terms),
            note: a.note.or(b.note),
        };
    }
    match first {
        Some(e) => PieceResult {
            env_lo: e.modulus.lo(),
            env_hi: e.modulus.hi(),
            pass: false,
            pieces: 1,
            terms: e.terms,
            note,
        },
        None => PieceResult {
            env_lo: 0.0,
            env_hi: f64::INFINITY,
            pass: false,
            pieces: 1,
            terms: 0,
            note,
        },
    }
}

/// Check one subinterval, with up to `max_retries` levels of bisection when
/// the enclosure is too wide to pass.
pub fn verify_subinterval(
    q: i64,
    spec: &PartitionSpec,
    table: &TermTable,
) -> Result<SubintervalRecord> {
    if q < spec.q_start || q >= spec.q_end {
        return Err(Error::Hypothesis(format!(
            "q = {q} outside {}..{}",
            spec.q_start, spec.q_end
        )));
    }
    let piece = spec.subinterval(q);
    let limit = spec.threshold.limit();
    let denom = match spec.threshold {
        Threshold::Constant { .. } => None,
        Threshold::PowerLog { .. } => {
            let left = spec.left_endpoint(q);
            Some(left.nth_root(6)? * left.ln()?)
        }
    };
    let r = check_piece(piece, 0, spec, limit, denom, table);
    let ratio = match denom {
        Some(d) if r.env_hi.is_finite() => Some(Interval::point(r.env_hi).div(d)?.hi()),
        Some(_) => Some(f64::INFINITY),
        None => None,
    };
    Ok(SubintervalRecord {
        q,
        t_lo: piece.lo(),
        t_hi: piece.hi(),
        envelope_lo: r.env_lo,
        envelope_hi: r.env_hi,
        ratio,
        pass: r.pass,
        pieces: r.pieces,
        terms: r.terms,
        note: r.note,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SweepVerdict {
    Pass,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    #[serde(with = "crate::report::decimal")]
    pub a0: f64,
    #[serde(with = "crate::report::decimal")]
    pub b0: f64,
    pub denominator: u64,
    pub subintervals: u64,
    pub passed: u64,
    pub verdict: SweepVerdict,
    #[serde(with = "crate::report::decimal::option")]
    pub max_envelope: Option<f64>,
    pub max_envelope_q: Option<i64>,
    #[serde(with = "crate::report::decimal::option")]
    pub max_ratio: Option<f64>,
    /// Subinterval with the largest ratio (or envelope, for a constant threshold).
    pub worst_q: Option<i64>,
    pub retried: u64,
    /// Subintervals that failed after all retries.
    pub offending: Vec<i64>,
    pub config_hash: String,
}

/// Execution facts that differ between otherwise identical runs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    #[serde(with = "crate::report::decimal")]
    pub wall_time_secs: f64,
    pub resumed_records: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub spec: PartitionSpec,
    pub records: Vec<SubintervalRecord>,
    pub summary: SweepSummary,
    pub run: RunInfo,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary.verdict == SweepVerdict::Pass
    }
}

fn summarize(spec: &PartitionSpec, records: &[SubintervalRecord]) -> SweepSummary {
    let mut s = SweepSummary {
        a0: spec.a0(),
        b0: spec.b0(),
        denominator: spec.denominator,
        subintervals: records.len() as u64,
        passed: 0,
        verdict: SweepVerdict::Pass,
        max_envelope: None,
        max_envelope_q: None,
        max_ratio: None,
        worst_q: None,
        retried: 0,
        offending: Vec::new(),
        config_hash: spec.config_hash(),
    };
    for r in records {
        if r.pass {
            s.passed += 1;
        } else {
            s.offending.push(r.q);
        }
        if r.pieces > 1 {
            s.retried += 1;
        }
        if s.max_envelope.map_or(true, |m| r.envelope_hi > m) {
            s.max_envelope = Some(r.envelope_hi);
            s.max_envelope_q = Some(r.q);
        }
        if let Some(ratio) = r.ratio {
            if s.max_ratio.map_or(true, |m| ratio > m) {
                s.max_ratio = Some(ratio);
                s.worst_q = Some(r.q);
            }
        }
    }
    if s.max_ratio.is_none() {
        s.worst_q = s.max_envelope_q;
    }
    if !s.offending.is_empty() {
        s.verdict = SweepVerdict::Undecided;
    }
    s
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub exec: Execution,
    /// JSON-lines file holding per-q records; created if missing, resumed if present.
    pub checkpoint: Option<PathBuf>,
    /// Records computed between checkpoint flushes.
    pub chunk: usize,
    /// Log progress every this many records (0 disables).
    pub progress_every: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            exec: Execution::Parallel,
            checkpoint: None,
            chunk: 1024,
            progress_every: 4096,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CheckpointHeader {
    config_hash: String,
}

struct Checkpoint {
    writer: BufWriter<File>,
}

impl Checkpoint {
    /// Open `path`, returning previously stored records. A partial trailing
    /// line left by an interrupted write is cut off before appending.
    fn open(path: &Path, hash: &str) -> Result<(Self, Vec<SubintervalRecord>)> {
        let mut done = Vec::new();
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(e.into()),
        };
        let mut valid = 0usize;
        if !text.is_empty() {
            let mut lines = text.split_inclusive('\n');
            let first = lines.next().unwrap_or_default();
            let header: CheckpointHeader = serde_json::from_str(first)
                .map_err(|e| Error::Checkpoint(format!("bad header: {e}")))?;
            if header.config_hash != hash {
                return Err(Error::Checkpoint(format!(
                    "{} belongs to config {}, not {hash}",
                    path.display(),
                    header.config_hash
                )));
            }
            if !first.ends_with('\n') {
                return Err(Error::Checkpoint("truncated header".into()));
            }
            valid = first.len();
            for line in lines {
                if !line.ends_with('\n') {
                    break;
                }
                match serde_json::from_str::<SubintervalRecord>(line) {
                    Ok(r) => done.push(r),
                    Err(_) => break,
                }
                valid += line.len();
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .write(true)
            .truncate(false)
            .open(path)?;
        file.set_len(valid as u64)?;
        let mut writer = BufWriter::new(file);
        writer.seek(SeekFrom::End(0))?;
        if valid == 0 {
            let header = CheckpointHeader {
                config_hash: hash.to_string(),
            };
            serde_json::to_writer(&mut writer, &header)?;
            writer.write_all(b"\n")?;
            writer.flush()?;
        }
        Ok((Checkpoint { writer }, done))
    }

    fn append(&mut self, records: &[SubintervalRecord]) -> Result<()> {
        for r in records {
            serde_json::to_writer(&mut self.writer, r)?;
            self.writer.write_all(b"\n")?;
        }
        self.writer.flush()?;
        Ok(())
    }
}

/// Run every subinterval of `spec`. Records come back sorted by `q`, so the
/// report does not depend on scheduling or on resumption.
pub fn verify_range(spec: &PartitionSpec, opts: &SweepOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let hash = spec.config_hash();
    let table = spec.term_table()?;

    let (mut checkpoint, previous) = match &opts.checkpoint {
        Some(path) => {
            let (c, r) = Checkpoint::open(path, &hash)?;
            (Some(c), r)
        }
        None => (None, Vec::new()),
    };
    let mut by_q = std::collections::BTreeMap::new();
    for r in previous {
        if r.q >= spec.q_start && r.q < spec.q_end {
            by_q.insert(r.q, r);
        }
    }
    let resumed = by_q.len() as u64;
    let todo: Vec<i64> = (spec.q_start..spec.q_end)
        .filter(|q| !by_q.contains_key(q))
        .collect();

    let chunk = opts.chunk.max(1);
    let mut finished = resumed;
    let mut last_log = finished;
    for part in todo.chunks(chunk) {
        let records = opts
            .exec
            .map(part, |&q| verify_subinterval(q, spec, &table))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        if let Some(c) = checkpoint.as_mut() {
            c.append(&records)?;
        }
        finished += records.len() as u64;
        for r in records {
            by_q.insert(r.q, r);
        }
        if opts.progress_every > 0 && finished - last_log >= opts.progress_every {
            log::info!("{finished}/{} subintervals checked", spec.len());
            last_log = finished;
        }
    }

    let records: Vec<SubintervalRecord> = by_q.into_values().collect();
    let summary = summarize(spec, &records);
    Ok(VerificationReport {
        spec: *spec,
        records,
        summary,
        run: RunInfo {
            wall_time_secs: start.elapsed().as_secs_f64(),
            resumed_records: resumed,
        },
    })
}
