//! IPC score and PAR10.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::{BenchError, BenchRecord};

/// Score of one run on one valid instance.
///
/// Failures score 0, runs under one second score 1, otherwise
/// `1 / (1 + log10(T / T*))` with `T*` the best successful time on the
/// instance.
pub fn ipc_instance_score(time: f64, best: f64, success: bool) -> f64 {
    if !success {
        0.0
    } else if time < 1.0 {
        1.0
    } else {
        1.0 / (1.0 + (time / best).log10())
    }
}

/// Mean runtime with each failure counted as ten times `cutoff`.
pub fn par10<'a, I>(records: I, cutoff: f64) -> Result<f64, BenchError>
where
    I: IntoIterator<Item = &'a BenchRecord>,
{
    let (sum, n) = records.into_iter().fold((0.0, 0usize), |(s, n), r| {
        let t = if r.status.is_success() { r.wallclock } else { 10.0 * cutoff };
        (s + t, n + 1)
    });
    if n == 0 {
        return Err(BenchError::EmptyRecords);
    }
    Ok(sum / n as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemScore {
    pub system: String,
    pub ipc: f64,
    pub par10: f64,
    pub solved: usize,
    pub instances: usize,
}

impl SystemScore {
    pub fn success_percentage(&self) -> f64 {
        if self.instances == 0 {
            0.0
        } else {
            100.0 * self.solved as f64 / self.instances as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    /// In order of first appearance in the records.
    pub systems: Vec<SystemScore>,
    /// Best successful time per instance; `None` marks an instance no system
    /// solved, which is excluded from IPC.
    pub best_times: BTreeMap<String, Option<f64>>,
    pub cutoff: f64,
}

impl ScoreReport {
    pub fn valid_instances(&self) -> usize {
        self.best_times.values().filter(|t| t.is_some()).count()
    }

    pub fn system(&self, name: &str) -> Option<&SystemScore> {
        self.systems.iter().find(|s| s.system == name)
    }

    /// Fixed-width table for terminals.
    pub fn render_table(&self) -> String {
        let width = self.systems.iter().map(|s| s.system.len()).max().unwrap_or(6).max(6);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:>10}  {:>12}  {:>8}  {:>9}",
            "system", "IPC", "PAR10", "solved", "success%"
        );
        for s in &self.systems {
            let _ = writeln!(
                out,
                "{:<width$}  {:>10.3}  {:>12.3}  {:>8}  {:>9.2}",
                s.system,
                s.ipc,
                s.par10,
                format!("{}/{}", s.solved, s.instances),
                s.success_percentage()
            );
        }
        let _ = writeln!(
            out,
            "valid instances: {} of {} (cutoff {}s)",
            self.valid_instances(),
            self.best_times.len(),
            self.cutoff
        );
        out
    }
}

/// Per-system IPC totals, PAR10 and success rates. Every system must have
/// exactly one record per instance, over the same instance set.
pub fn ipc_score(records: &[BenchRecord], cutoff: f64) -> Result<ScoreReport, BenchError> {
    if records.is_empty() {
        return Err(BenchError::EmptyRecords);
    }
    let mut order: Vec<&str> = Vec::new();
    let mut by_system: BTreeMap<&str, BTreeMap<&str, &BenchRecord>> = BTreeMap::new();
    for r in records {
        let entry = by_system.entry(&r.system).or_insert_with(|| {
            order.push(&r.system);
            BTreeMap::new()
        });
        if entry.insert(&r.instance, r).is_some() {
            return Err(BenchError::DuplicateRecord {
                system: r.system.clone(),
                instance: r.instance.clone(),
            });
        }
    }
    let reference: BTreeSet<&str> = by_system[order[0]].keys().copied().collect();
    for &sys in &order[1..] {
        let keys: BTreeSet<&str> = by_system[sys].keys().copied().collect();
        if keys != reference {
            return Err(BenchError::MismatchedInstances { system: sys.to_string() });
        }
    }

    let best_times: BTreeMap<String, Option<f64>> = reference
        .iter()
        .map(|&inst| {
            let best = order
                .iter()
                .map(|s| by_system[s][inst])
                .filter(|r| r.status.is_success())
                .map(|r| r.wallclock)
                .min_by(f64::total_cmp);
            (inst.to_string(), best)
        })
        .collect();

    let mut systems = Vec::with_capacity(order.len());
    for &sys in &order {
        let runs = &by_system[sys];
        let ipc = runs
            .iter()
            .filter_map(|(inst, r)| {
                best_times[*inst].map(|best| ipc_instance_score(r.wallclock, best, r.status.is_success()))
            })
            .sum();
        systems.push(SystemScore {
            system: sys.to_string(),
            ipc,
            par10: par10(runs.values().copied(), cutoff)?,
            solved: runs.values().filter(|r| r.status.is_success()).count(),
            instances: runs.len(),
        });
    }
    Ok(ScoreReport {
        systems,
        best_times,
        cutoff,
    })
}
