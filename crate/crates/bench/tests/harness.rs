//! Timing loop, input generation, CSV output and the command-line front end.

use std::hint::black_box;
use std::process::Command;

use manifolds_bench::{
    emit_csv, generate_inputs, measure, parse_csv, run_bench, BenchConfig, BenchRecord, ManifoldId,
    OpId, MAX_EXPONENT,
};

fn quick(manifolds: &[ManifoldId], ops: &[OpId]) -> BenchConfig {
    BenchConfig {
        manifolds: manifolds.to_vec(),
        ops: ops.to_vec(),
        min_seconds: 0.01,
        seed: 7,
    }
}

#[test]
fn one_pair_gives_one_record() {
    let records = run_bench(&quick(&[ManifoldId::Sphere2], &[OpId::Distance])).unwrap();
    assert_eq!(records.len(), 1);
    let r = &records[0];
    assert_eq!((r.manifold, r.op), (ManifoldId::Sphere2, OpId::Distance));
    let exponent = (r.reps as f64).log10().round() as u32;
    assert_eq!(10u64.pow(exponent), r.reps);
    assert!((1..=MAX_EXPONENT).contains(&exponent));
    assert!(r.total_seconds >= 0.01);
    assert_eq!(r.per_op_microseconds, r.total_seconds * 1e6 / r.reps as f64);
}

#[test]
fn records_follow_the_selection_order() {
    let cfg = quick(
        &[ManifoldId::So3, ManifoldId::Euclidean3],
        &[OpId::Retract, OpId::Distance],
    );
    let pairs: Vec<_> = run_bench(&cfg)
        .unwrap()
        .iter()
        .map(|r| (r.manifold, r.op))
        .collect();
    assert_eq!(
        pairs,
        [
            (ManifoldId::So3, OpId::Retract),
            (ManifoldId::So3, OpId::Distance),
            (ManifoldId::Euclidean3, OpId::Retract),
            (ManifoldId::Euclidean3, OpId::Distance),
        ]
    );
}

#[test]
fn inputs_are_deterministic_and_valid() {
    for id in ManifoldId::ALL {
        let m = id.build();
        for op in OpId::ALL {
            let a = generate_inputs(id, op, m.as_ref(), 11).unwrap();
            let b = generate_inputs(id, op, m.as_ref(), 11).unwrap();
            assert_eq!(a, b);
            assert!(m.is_point(&a.p, 1e-9) && m.is_point(&a.q, 1e-9));
            assert!(m.is_tangent(&a.p, &a.x, 1e-9));
            let c = generate_inputs(id, op, m.as_ref(), 12).unwrap();
            assert_ne!(a.p, c.p, "{id}/{op}");
        }
    }
}

#[test]
fn loop_overhead_is_below_ten_nanoseconds() {
    let mut acc = [0.0f64; 8];
    let (reps, seconds) = measure(0.05, |i| acc[i % 8] = black_box(1.0)).unwrap();
    black_box(&acc);
    let per_op_ns = seconds * 1e9 / reps as f64;
    assert!(per_op_ns < 10.0, "{per_op_ns} ns per iteration");
}

#[test]
fn invalid_config_is_rejected() {
    let mut cfg = quick(&[ManifoldId::Sphere2], &[OpId::Distance]);
    cfg.min_seconds = 0.0;
    assert!(run_bench(&cfg).is_err());
    cfg.min_seconds = f64::NAN;
    assert!(run_bench(&cfg).is_err());
    assert!(run_bench(&quick(&[], &[OpId::Distance])).is_err());
}

#[test]
fn ids_parse_and_print() {
    for id in ManifoldId::ALL {
        assert_eq!(id.to_string().parse::<ManifoldId>().unwrap(), id);
    }
    for op in OpId::ALL {
        assert_eq!(op.to_string().parse::<OpId>().unwrap(), op);
    }
    assert!("sphere3".parse::<ManifoldId>().is_err());
    assert!("exp".parse::<OpId>().is_err());
}

#[test]
fn csv_shape_and_round_trip() {
    assert_eq!(emit_csv(&[]), "manifold,op,reps,total_seconds,per_op_us\n");
    assert!(parse_csv(&emit_csv(&[])).unwrap().is_empty());

    let record = BenchRecord {
        manifold: ManifoldId::Spd3Power128x128,
        op: OpId::InverseRetract,
        reps: 100,
        total_seconds: 1.0 / 3.0,
        per_op_microseconds: 1e6 / 300.0,
    };
    let text = emit_csv(std::slice::from_ref(&record));
    assert_eq!(text.lines().count(), 2);
    assert!(text.ends_with('\n'));
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("spd3_power_128x128,inverse_retract,100,"));
    assert_eq!(parse_csv(&text).unwrap(), vec![record]);

    let measured = run_bench(&quick(&[ManifoldId::Euclidean3], &OpId::ALL)).unwrap();
    assert_eq!(parse_csv(&emit_csv(&measured)).unwrap(), measured);
    assert!(parse_csv("a,b\n1,2\n").is_err());
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bench-cli"))
}

#[test]
fn cli_writes_csv_to_stdout_and_files() {
    let out = cli()
        .args([
            "--manifolds",
            "sphere2,euclidean3",
            "--ops",
            "distance",
            "--min-seconds",
            "0.01",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let records = parse_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(records.len(), 2);

    let path = std::env::temp_dir().join(format!("bench-cli-{}.csv", std::process::id()));
    let status = cli()
        .args([
            "--manifolds",
            "so3",
            "--ops",
            "retract",
            "--min-seconds",
            "0.01",
            "--seed",
            "3",
        ])
        .arg("--out")
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let records = parse_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].manifold, ManifoldId::So3);
}

#[test]
fn cli_reports_errors() {
    for args in [
        &["--threads", "2"][..],
        &["--manifolds", "torus"],
        &["--ops", "exp"],
        &["--min-seconds", "-1"],
        &[
            "--out",
            "/nonexistent-dir/out.csv",
            "--manifolds",
            "sphere2",
            "--ops",
            "distance",
            "--min-seconds",
            "0.001",
        ],
    ] {
        let out = cli().args(args).output().unwrap();
        assert!(!out.status.success(), "{args:?}");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(!stderr.trim().is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}
