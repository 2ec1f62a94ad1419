//! Classification of whole graph families with a resumable JSONL checkpoint.
//!
//! Every record is keyed by the canonical graph6 text of its graph, so a
//! resumed scan recognises finished work regardless of where the input came
//! from. One thread owns the checkpoint file; workers only classify.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{classify, VerdictKind};
use crate::enumerate::{for_each_connected, read_graph6_stream, Constraints, EnumerateError, LineError, StreamMode};
use crate::graph::{canonical_form, CanonicalForm, Graph};
use crate::solver::{Budget, CaptureTime, SolveError};

/// Witnesses kept per histogram cell.
pub const WITNESSES_PER_CELL: usize = 5;

/// One classified graph, one JSON object per checkpoint line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointRecord {
    pub g6: String,
    pub c: usize,
    pub cl: usize,
    pub gamma: usize,
    /// Capture times of the winning solves that were run for this record.
    pub ct: Vec<CaptureTime>,
    /// Seconds since the Unix epoch.
    pub ts: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanSource {
    Enumerate(Constraints),
    Graph6File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    pub workers: usize,
    pub budget: Budget,
    /// Abort corrupt checkpoint or input lines instead of skipping them.
    pub strict: bool,
    /// Stop after writing this many new records, leaving the scan
    /// incomplete as if it had been killed.
    pub stop_after: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            checkpoint: None,
            resume: false,
            workers: 1,
            budget: Budget::from_env(),
            strict: false,
            stop_after: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub g6: String,
    pub c: usize,
    pub cl: usize,
    pub gamma: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramCell {
    pub c: usize,
    pub cl: usize,
    pub count: usize,
    /// Lexicographically smallest keys in the cell.
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub source: ScanSource,
    pub total: usize,
    pub complete: bool,
    pub histogram: Vec<HistogramCell>,
    pub wall_time_secs: f64,
    /// Shortcut hits, over the records classified in this run only.
    pub filter_hits: BTreeMap<String, usize>,
    pub new_records: usize,
    pub resumed_records: usize,
    /// Checkpoint or input lines that could not be used, by line number.
    pub skipped_lines: Vec<usize>,
}

impl ScanReport {
    pub fn cell(&self, c: usize, cl: usize) -> Option<&HistogramCell> {
        self.histogram.iter().find(|h| h.c == c && h.cl == cl)
    }

    /// Graphs whose lazy cop number is in `range`.
    pub fn count_lazy(&self, range: impl std::ops::RangeBounds<usize>) -> usize {
        self.histogram
            .iter()
            .filter(|h| range.contains(&h.cl))
            .map(|h| h.count)
            .sum()
    }

    pub fn write_histogram_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "c,cl,count")?;
        for h in &self.histogram {
            writeln!(out, "{},{},{}", h.c, h.cl, h.count)?;
        }
        Ok(())
    }

    /// The report with run-dependent fields cleared, for comparing runs.
    pub fn normalized(&self) -> ScanReport {
        ScanReport {
            wall_time_secs: 0.0,
            filter_hits: BTreeMap::new(),
            new_records: 0,
            resumed_records: 0,
            skipped_lines: Vec::new(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("checkpoint I/O: {0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("input {0}")]
    Input(LineError),
    #[error("checkpoint line {line}: {message}")]
    Corrupt { line: usize, message: String },
    #[error("solving {g6}: {error}")]
    Solve { g6: String, error: SolveError },
}

/// Records of an existing checkpoint file. Unreadable lines are skipped and
/// reported unless `strict`. The flag tells whether the file ends without a
/// newline (a torn final write).
pub fn read_checkpoint(path: &Path, strict: bool) -> Result<(Vec<CheckpointRecord>, Vec<usize>, bool), ScanError> {
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok((records, skipped, false)),
        Err(e) => return Err(e.into()),
    };
    let mut reader = BufReader::new(file);
    let mut line = String::new();
    let mut number = 0;
    let mut torn = false;
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            break;
        }
        number += 1;
        torn = !line.ends_with('\n');
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        match serde_json::from_str::<CheckpointRecord>(text) {
            Ok(r) => records.push(r),
            Err(e) if strict => {
                return Err(ScanError::Corrupt {
                    line: number,
                    message: e.to_string(),
                })
            }
            Err(_) => skipped.push(number),
        }
    }
    Ok((records, skipped, torn))
}

fn now_secs() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Classify one graph the way scans do.
pub fn classify_record(g: &Graph, key: &str, budget: &Budget) -> Result<(CheckpointRecord, Vec<VerdictKind>), ScanError> {
    let cl = classify(g, true, budget).map_err(|error| ScanError::Solve {
        g6: key.to_string(),
        error,
    })?;
    let o = cl.outcome;
    let record = CheckpointRecord {
        g6: key.to_string(),
        c: o.cop_number,
        cl: o.lazy_cop_number,
        gamma: o.domination_number,
        ct: o.capture_times.into_iter().filter(|t| t.rounds.is_some()).collect(),
        ts: now_secs(),
    };
    Ok((record, cl.verdicts.into_iter().map(|v| v.kind).collect()))
}

/// Canonical forms of the source, sorted, plus unusable input lines.
fn collect_source(source: &ScanSource, strict: bool) -> Result<(Vec<CanonicalForm>, Vec<usize>), ScanError> {
    let mut forms = Vec::new();
    let mut skipped = Vec::new();
    match source {
        ScanSource::Enumerate(c) => for_each_connected(c, |cf, _| forms.push(cf.clone()))?,
        ScanSource::Graph6File(path) => {
            let mode = if strict { StreamMode::Strict } else { StreamMode::Permissive };
            for item in read_graph6_stream(BufReader::new(File::open(path)?), mode) {
                match item {
                    Ok(g) => forms.push(canonical_form(&g)),
                    Err(e) if strict => return Err(ScanError::Input(e)),
                    Err(e) => skipped.push(e.line()),
                }
            }
        }
    }
    forms.sort_unstable();
    forms.dedup();
    Ok((forms, skipped))
}

fn open_checkpoint(path: &Path, resume: bool, torn: bool) -> io::Result<File> {
    if !resume {
        return File::create(path);
    }
    let mut f = OpenOptions::new().create(true).read(true).append(true).open(path)?;
    if torn {
        f.write_all(b"\n")?;
    } else if f.metadata()?.len() > 0 {
        // guard against files edited without a final newline
        let mut last = [0u8; 1];
        f.seek(SeekFrom::End(-1))?;
        f.read_exact(&mut last)?;
        if last[0] != b'\n' {
            f.write_all(b"\n")?;
        }
    }
    Ok(f)
}

pub fn run_scan(source: &ScanSource, opts: &ScanOptions) -> Result<ScanReport, ScanError> {
    let started = Instant::now();
    let (forms, mut skipped_lines) = collect_source(source, opts.strict)?;

    let mut done: HashMap<String, CheckpointRecord> = HashMap::new();
    let mut writer = None;
    if let Some(path) = &opts.checkpoint {
        let mut torn = false;
        if opts.resume {
            let (records, skipped, t) = read_checkpoint(path, opts.strict)?;
            torn = t;
            skipped_lines.extend(skipped);
            for r in records {
                done.entry(r.g6.clone()).or_insert(r);
            }
        }
        writer = Some(io::BufWriter::new(open_checkpoint(path, opts.resume, torn)?));
    }

    let keys: Vec<String> = forms.iter().map(|cf| cf.to_graph6().to_string()).collect();
    let resumed_records = keys.iter().filter(|k| done.contains_key(*k)).count();
    let todo: Vec<usize> = (0..keys.len()).filter(|&i| !done.contains_key(&keys[i])).collect();

    let mut filter_hits: BTreeMap<String, usize> = BTreeMap::new();
    let mut new_records = 0usize;
    let limit = opts.stop_after.unwrap_or(usize::MAX);
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let mut failure: Option<ScanError> = None;

    std::thread::scope(|scope| {
        let (tx, rx) = mpsc::channel::<Result<(CheckpointRecord, Vec<VerdictKind>), ScanError>>();
        for _ in 0..opts.workers.max(1) {
            let tx = tx.clone();
            let (next, stop, todo, keys, forms) = (&next, &stop, &todo, &keys, &forms);
            let budget = opts.budget;
            scope.spawn(move || loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&idx) = todo.get(i) else { break };
                let g = forms[idx].to_graph();
                if tx.send(classify_record(&g, &keys[idx], &budget)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for msg in rx {
            if new_records >= limit || failure.is_some() {
                stop.store(true, Ordering::Relaxed);
                continue;
            }
            match msg {
                Ok((record, kinds)) => {
                    if let Some(w) = writer.as_mut() {
                        let line = serde_json::to_string(&record).expect("records serialise");
                        let res = writeln!(w, "{line}").and_then(|_| w.flush());
                        if let Err(e) = res {
                            failure = Some(e.into());
                            stop.store(true, Ordering::Relaxed);
                            continue;
                        }
                    }
                    for k in kinds {
                        *filter_hits.entry(k.name().to_string()).or_default() += 1;
                    }
                    done.insert(record.g6.clone(), record);
                    new_records += 1;
                    if new_records >= limit {
                        stop.store(true, Ordering::Relaxed);
                    }
                }
                Err(e) => {
                    failure = Some(e);
                    stop.store(true, Ordering::Relaxed);
                }
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }

    let mut cells: BTreeMap<(usize, usize), HistogramCell> = BTreeMap::new();
    let mut total = 0;
    // keys are sorted, so the first witnesses seen are the smallest
    for key in &keys {
        let Some(r) = done.get(key) else { continue };
        total += 1;
        let cell = cells.entry((r.c, r.cl)).or_insert_with(|| HistogramCell {
            c: r.c,
            cl: r.cl,
            count: 0,
            witnesses: Vec::new(),
        });
        cell.count += 1;
        if cell.witnesses.len() < WITNESSES_PER_CELL {
            cell.witnesses.push(Witness {
                g6: r.g6.clone(),
                c: r.c,
                cl: r.cl,
                gamma: r.gamma,
            });
        }
    }
    skipped_lines.sort_unstable();
    Ok(ScanReport {
        source: source.clone(),
        total,
        complete: total == keys.len(),
        histogram: cells.into_values().collect(),
        wall_time_secs: started.elapsed().as_secs_f64(),
        filter_hits,
        new_records,
        resumed_records,
        skipped_lines,
    })
}
