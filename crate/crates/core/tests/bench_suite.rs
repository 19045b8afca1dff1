use std::fs;

use setopt_core::af::{write_apx, ArgumentationFramework};
use setopt_core::bench::{ipc_score, par10, read_records, run_suite, write_records, BenchRecord, RunStatus, SuiteConfig, SystemConfig};

fn rec(system: &str, instance: &str, status: RunStatus, t: f64) -> BenchRecord {
    BenchRecord {
        system: system.into(),
        instance: instance.into(),
        status,
        wallclock: t,
        solutions: 0,
        verified: None,
    }
}

#[test]
fn suite_records_success_crash_and_timeout() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..4 {
        let af = ArgumentationFramework::random(8, 0.3, seed);
        fs::write(dir.path().join(format!("r{seed}.apx")), write_apx(&af)).unwrap();
    }
    fs::write(dir.path().join("bad.apx"), "arg(a).\natt(a,zz).\n").unwrap();
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let systems = vec![
        SystemConfig::builtin("full"),
        SystemConfig::Builtin {
            name: "batched".into(),
            batch_limit: Some(1),
        },
        SystemConfig::External {
            name: "stuck".into(),
            program: "sh".into(),
            args: vec!["-c".into(), "exec sleep 5".into(), "{file}".into()],
        },
    ];
    let cfg = SuiteConfig {
        cutoff: 0.3,
        jobs: 4,
        verify: true,
    };
    let recs = run_suite(dir.path(), &systems, &cfg).unwrap();
    assert_eq!(recs.len(), 15);
    let of = |s: &'static str| recs.iter().filter(move |r| r.system == s);
    for r in of("full").chain(of("batched")) {
        if r.instance == "bad.apx" {
            assert_eq!(r.status, RunStatus::Crash);
        } else {
            assert_eq!(r.status, RunStatus::Success, "{r:?}");
            assert_eq!(r.verified, Some(true));
            assert!(r.solutions >= 1);
        }
    }
    assert!(of("stuck").all(|r| r.status == RunStatus::Timeout && r.wallclock >= 0.3));
    let full: Vec<usize> = of("full").map(|r| r.solutions).collect();
    let batched: Vec<usize> = of("batched").map(|r| r.solutions).collect();
    assert_eq!(full, batched);

    assert_eq!(read_records(&write_records(&recs)).unwrap(), recs);
    let report = ipc_score(&recs, cfg.cutoff).unwrap();
    assert_eq!(report.valid_instances(), 4);
    assert_eq!(report.system("stuck").unwrap().ipc, 0.0);
    assert!(report.systems.iter().all(|s| s.ipc <= report.valid_instances() as f64 + 1e-9));
}

#[test]
fn par10_ignores_competitors_while_ipc_does_not() {
    let a = [
        rec("a", "i1", RunStatus::Success, 10.0),
        rec("a", "i2", RunStatus::Timeout, 100.0),
        rec("a", "i3", RunStatus::Success, 50.0),
    ];
    let b = [
        rec("b", "i1", RunStatus::Success, 1.0),
        rec("b", "i2", RunStatus::Success, 30.0),
        rec("b", "i3", RunStatus::Crash, 2.0),
    ];
    let alone = ipc_score(&a, 100.0).unwrap();
    let both: Vec<BenchRecord> = a.iter().chain(&b).cloned().collect();
    let together = ipc_score(&both, 100.0).unwrap();
    let (sa, st) = (alone.system("a").unwrap(), together.system("a").unwrap());
    assert_eq!(sa.par10, st.par10);
    assert!((sa.par10 - par10(&a, 100.0).unwrap()).abs() < 1e-9);
    assert!((sa.par10 - (10.0 + 1000.0 + 50.0) / 3.0).abs() < 1e-9);
    assert!((sa.ipc - 2.0).abs() < 1e-9);
    assert!((st.ipc - (0.5 + 1.0)).abs() < 1e-9);
    assert_eq!(together.render_table(), ipc_score(&both, 100.0).unwrap().render_table());
}
