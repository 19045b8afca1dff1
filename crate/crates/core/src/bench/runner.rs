use std::collections::BTreeSet;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{BenchError, BenchRecord, RunStatus, DEFAULT_CUTOFF};
use crate::af::{brute_force_preferred, enumerate_preferred, parse_apx, AfError};
use crate::enumerate::{EnumError, EnumerationConfig};

/// Frameworks up to this size are checked against the brute-force oracle in
/// verify mode.
pub const VERIFY_MAX_ARGS: usize = 12;

/// A system under test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemConfig {
    /// Preferred-extension enumeration in this process.
    Builtin { name: String, batch_limit: Option<usize> },
    /// Any program following the ICCMA calling convention. Arguments equal
    /// to `{file}` are replaced by the instance path; without such an
    /// argument `--p EE-PR --f <path> --fo apx` is appended.
    External {
        name: String,
        program: PathBuf,
        args: Vec<String>,
    },
}

impl SystemConfig {
    pub fn builtin(name: impl Into<String>) -> Self {
        SystemConfig::Builtin {
            name: name.into(),
            batch_limit: None,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            SystemConfig::Builtin { name, .. } | SystemConfig::External { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Seconds.
    pub cutoff: f64,
    pub jobs: usize,
    pub verify: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            cutoff: DEFAULT_CUTOFF,
            jobs: 1,
            verify: false,
        }
    }
}

/// `.apx` files directly inside `dir`, sorted by file name.
pub fn discover_instances(dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    let entries = std::fs::read_dir(dir).map_err(|e| BenchError::Io(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "apx"))
        .collect();
    files.sort();
    Ok(files)
}

fn instance_id(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Runs every system on every instance. Records come back ordered by system,
/// then instance, regardless of `jobs`.
pub fn run_suite(dir: &Path, systems: &[SystemConfig], cfg: &SuiteConfig) -> Result<Vec<BenchRecord>, BenchError> {
    let instances = discover_instances(dir)?;
    let names: BTreeSet<&str> = systems.iter().map(SystemConfig::name).collect();
    if names.len() != systems.len() {
        return Err(BenchError::Io("system names must be distinct".into()));
    }
    let work: Vec<(&SystemConfig, &PathBuf)> = systems
        .iter()
        .flat_map(|s| instances.iter().map(move |i| (s, i)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| BenchError::Io(e.to_string()))?;
    Ok(pool.install(|| work.par_iter().map(|(s, i)| run_one(s, i, cfg)).collect()))
}

/// A single run, timed by wallclock from before the instance is read.
pub fn run_one(system: &SystemConfig, path: &Path, cfg: &SuiteConfig) -> BenchRecord {
    let cutoff = Duration::from_secs_f64(cfg.cutoff);
    let start = Instant::now();
    let (status, solutions, verified) = match system {
        SystemConfig::Builtin { batch_limit, .. } => run_builtin(path, start + cutoff, *batch_limit, cfg.verify),
        SystemConfig::External { program, args, .. } => run_external(program, args, path, cutoff),
    };
    let mut wallclock = start.elapsed().as_secs_f64();
    if status.is_success() && wallclock > cfg.cutoff {
        return BenchRecord {
            system: system.name().to_string(),
            instance: instance_id(path),
            status: RunStatus::Timeout,
            wallclock,
            solutions,
            verified,
        };
    }
    if status == RunStatus::Timeout {
        wallclock = wallclock.max(cfg.cutoff);
    }
    BenchRecord {
        system: system.name().to_string(),
        instance: instance_id(path),
        status,
        wallclock,
        solutions,
        verified,
    }
}

fn run_builtin(path: &Path, deadline: Instant, batch_limit: Option<usize>, verify: bool) -> (RunStatus, usize, Option<bool>) {
    let Ok(text) = std::fs::read_to_string(path) else {
        return (RunStatus::Crash, 0, None);
    };
    let Ok(af) = parse_apx(&text) else {
        return (RunStatus::Crash, 0, None);
    };
    let cfg = EnumerationConfig {
        batch_limit,
        deadline: Some(deadline),
        ..EnumerationConfig::maximize()
    };
    match enumerate_preferred(&af, &cfg) {
        Ok(p) => {
            // every emitted extension was already checked admissible
            let verified = verify.then(|| {
                if af.len() <= VERIFY_MAX_ARGS {
                    let got: BTreeSet<_> = p.extensions.iter().cloned().collect();
                    got.len() == p.extensions.len() && brute_force_preferred(&af).is_ok_and(|want| want == got)
                } else {
                    true
                }
            });
            let status = if verified == Some(false) {
                RunStatus::Crash
            } else {
                RunStatus::Success
            };
            (status, p.extensions.len(), verified)
        }
        Err(AfError::Enumeration(EnumError::Interrupted)) => (RunStatus::Timeout, 0, None),
        Err(_) => (RunStatus::Crash, 0, None),
    }
}

/// Counts extensions in an ICCMA bracket list such as `[[a],[b,c]]`.
fn count_extensions(out: &str) -> Option<usize> {
    let s: String = out.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    if inner.is_empty() {
        return Some(0);
    }
    Some(inner.matches('[').count())
}

fn run_external(program: &Path, args: &[String], path: &Path, cutoff: Duration) -> (RunStatus, usize, Option<bool>) {
    let file = path.to_string_lossy().into_owned();
    let mut argv: Vec<String> = args.iter().map(|a| if a == "{file}" { file.clone() } else { a.clone() }).collect();
    if !args.iter().any(|a| a == "{file}") {
        argv.extend(["--p".into(), "EE-PR".into(), "--f".into(), file, "--fo".into(), "apx".into()]);
    }
    let Ok(mut child) = Command::new(program)
        .args(&argv)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
    else {
        return (RunStatus::Crash, 0, None);
    };
    let mut stdout = child.stdout.take().expect("piped");
    let reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    let start = Instant::now();
    let status = loop {
        match child.try_wait() {
            Ok(Some(st)) => break Some(st),
            Ok(None) if start.elapsed() >= cutoff => {
                let _ = child.kill();
                let _ = child.wait();
                break None;
            }
            Ok(None) => thread::sleep(Duration::from_millis(2)),
            Err(_) => break None,
        }
    };
    let output = reader.join().unwrap_or_default();
    match status {
        None => (RunStatus::Timeout, 0, None),
        Some(st) if st.success() => match count_extensions(&output) {
            Some(n) => (RunStatus::Success, n, None),
            None => (RunStatus::Crash, 0, None),
        },
        Some(_) => (RunStatus::Crash, 0, None),
    }
}
