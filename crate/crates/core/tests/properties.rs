use csf::algorithms::{
    add_arg1_arg2_times, cube_v3, cube_v4, cube_v5, get_bin, get_max, pow_add_only, procedures,
    CubeV2, CubeV3, CubeV5, PowersTable,
};
use csf::csf::{run_procedure, run_procedure_with, CheckMode, RunOptions, TraceLevel};
use csf::registry::Registry;
use csf::{Ops, Params, Value};
use proptest::prelude::*;

fn floor_log2(n: i64) -> u64 {
    u64::from(63 - n.leading_zeros())
}

fn params_for(name: &str, n: i64) -> Params {
    match name {
        "getmax" => Params::new().with_array("anArr", (0..=n).map(|i| (i * 37) % 11).collect()),
        "pow" => Params::n(n).with("M", 3),
        "getbin" => Params::n(n.max(1)),
        _ => Params::n(n),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn runs_are_deterministic(idx in 0usize..8, n in 0i64..300) {
        let reg = Registry::builtin();
        let p = reg.iter().nth(idx).unwrap();
        let params = params_for(p.name, n);
        let a = run_procedure(&p.spec, &params, CheckMode::Strict).unwrap();
        let b = run_procedure(&p.spec, &params, CheckMode::Strict).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn checking_never_changes_results_or_counts(idx in 0usize..8, n in 0i64..300) {
        let reg = Registry::builtin();
        let p = reg.iter().nth(idx).unwrap();
        let params = params_for(p.name, n);
        let reports: Vec<_> = [CheckMode::Strict, CheckMode::Lenient, CheckMode::Off]
            .into_iter()
            .map(|mode| run_procedure(&p.spec, &params, mode).unwrap())
            .collect();
        for r in &reports {
            prop_assert!(r.is_clean());
            prop_assert_eq!(&r.result, &reports[0].result);
            prop_assert_eq!(r.counters, reports[0].counters);
            prop_assert_eq!(&r.block_iterations, &reports[0].block_iterations);
        }
    }

    #[test]
    fn trace_counters_accumulate(n in 0i64..200) {
        let spec = procedures::v5();
        let report = run_procedure(&spec, &Params::n(n), CheckMode::Strict).unwrap();
        let mut prev = csf::OpCounter::default();
        for (i, ev) in report.trace.iter().enumerate() {
            prop_assert_eq!(ev.seq, i as u64);
            prop_assert!(ev.counters.adds >= prev.adds && ev.counters.compares >= prev.compares);
            prev = ev.counters;
        }
        prop_assert_eq!(prev, report.counters);
    }

    #[test]
    fn lower_trace_levels_keep_a_subsequence(n in 1i64..100) {
        let spec = procedures::get_bin_procedure();
        let params = Params::n(n);
        let run = |trace| run_procedure_with(&spec, &params, RunOptions { mode: CheckMode::Strict, trace }).unwrap();
        let full = run(TraceLevel::Iterations);
        let blocks = run(TraceLevel::Blocks);
        prop_assert!(run(TraceLevel::None).trace.is_empty());
        let kinds = |r: &csf::csf::RunReport| r.trace.iter().map(|e| (e.kind, e.block, e.checks.clone())).collect::<Vec<_>>();
        let coarse: Vec<_> = kinds(&full).into_iter().filter(|k| k.0 != csf::csf::Checkpoint::IterationEnd).collect();
        prop_assert_eq!(coarse, kinds(&blocks));
    }

    #[test]
    fn v3_iterations_and_adds(n in 0i64..3000) {
        let spec = procedures::v3();
        let r = run_procedure(&spec, &Params::n(n), CheckMode::Off).unwrap();
        prop_assert_eq!(r.principal_iterations(&spec), n as u64);
        prop_assert_eq!(r.counters.adds, 4 * n as u64);
    }

    #[test]
    fn v5_iterations_are_bit_length(n in 1i64..2_000_000) {
        let spec = procedures::v5();
        let r = run_procedure(&spec, &Params::n(n), CheckMode::Off).unwrap();
        prop_assert_eq!(r.principal_iterations(&spec), floor_log2(n));
        prop_assert_eq!(r.result, Some(Value::Int(n * n * n)));
    }

    #[test]
    fn v5_terms_after_every_iteration(n in 1i64..2_000_000) {
        let mut ops = Ops::new();
        let b = get_bin(&mut ops, n).unwrap();
        let bits = b.bits();
        let k = b.k();
        let t = PowersTable::build(&mut ops, 3 * k + 1).unwrap();
        let mut st = CubeV5::init(&mut ops, bits).unwrap();
        loop {
            let r: i64 = bits[..=st.j as usize].iter().enumerate().map(|(i, &x)| x << i).sum();
            prop_assert_eq!(st.c, r * r * r);
            prop_assert_eq!(st.s, (r * r) << st.j);
            prop_assert_eq!(st.l, r << (2 * st.j));
            if st.j == k {
                break;
            }
            st = st.step(&mut ops, bits, t.as_slice()).unwrap();
        }
    }

    #[test]
    fn add_arg1_arg2_times_multiplies(x in 0i64..1_000_000, n in 1i64..1_000_000) {
        let mut ops = Ops::new();
        let b = get_bin(&mut ops, n).unwrap();
        prop_assert_eq!(add_arg1_arg2_times(&mut ops, x, &b).unwrap(), x * n);
    }

    #[test]
    fn get_bin_matches_oracle(n in 1i64..i64::MAX) {
        let b = get_bin(&mut Ops::new(), n).unwrap();
        prop_assert_eq!(b.bits().to_vec(), csf::oracle::binary_digits(n));
    }

    #[test]
    fn get_max_keeps_first_maximum(arr in prop::collection::vec(-50i64..50, 1..40)) {
        let report = run_procedure(
            &procedures::get_max_procedure(),
            &Params::new().with_array("anArr", arr.clone()),
            CheckMode::Strict,
        )
        .unwrap();
        let max = *arr.iter().max().unwrap();
        let first = arr.iter().position(|&x| x == max).unwrap() as i64;
        prop_assert_eq!(report.result, Some(Value::Int(max)));
        prop_assert_eq!(report.final_state.get("r").unwrap(), first);
        prop_assert_eq!(get_max(&mut Ops::new(), &arr).unwrap(), max);
    }

    #[test]
    fn pow_matches_oracle(n in 0i64..60, m in 1i64..8) {
        prop_assert_eq!(pow_add_only(&mut Ops::new(), n, m).unwrap(), n.pow(m as u32));
    }
}

#[test]
fn pow_cubed_equals_v4() {
    for n in 1..1000 {
        assert_eq!(
            pow_add_only(&mut Ops::new(), n, 3).unwrap(),
            cube_v4(&mut Ops::new(), n).unwrap(),
            "N = {n}"
        );
    }
}

#[test]
fn v2_subgoals_after_every_iteration() {
    let mut ops = Ops::new();
    let mut st = CubeV2::init(&mut ops);
    for _ in 0..2000 {
        st = st.step(&mut ops).unwrap();
        assert_eq!((st.c, st.s), (st.r * st.r * st.r, st.r * st.r));
    }
}

#[test]
fn v3_subgoals_after_every_iteration() {
    let mut ops = Ops::new();
    let mut st = CubeV3::init(&mut ops);
    for _ in 0..2000 {
        st = st.step(&mut ops).unwrap();
        let r = st.r;
        assert_eq!(
            (st.c, st.q, st.l),
            (r * r * r, 3 * r * r + 3 * r + 1, 6 * r + 6)
        );
    }
}

#[test]
fn v5_known_states() {
    let spec = procedures::v5();
    let r = run_procedure(&spec, &Params::n(5), CheckMode::Strict).unwrap();
    assert_eq!(r.result, Some(Value::Int(125)));
    assert_eq!(r.final_state.get("s").unwrap(), 100);
    assert_eq!(r.final_state.get("l").unwrap(), 80);
    let r = run_procedure(&spec, &Params::n(8), CheckMode::Strict).unwrap();
    assert_eq!(
        (r.result.clone(), r.principal_iterations(&spec)),
        (Some(Value::Int(512)), 3)
    );
    let r = run_procedure(&spec, &Params::n(1), CheckMode::Strict).unwrap();
    assert_eq!(r.principal_iterations(&spec), 0);
}

#[test]
fn short_circuit_at_zero() {
    for name in ["v4", "v5", "pow"] {
        let reg = Registry::builtin();
        let p = reg.get(name).unwrap();
        let params = p.params(Some(0), Some(2), None).unwrap();
        let r = run_procedure(&p.spec, &params, CheckMode::Strict).unwrap();
        assert!(r.short_circuited && r.is_clean(), "{name}");
        assert_eq!(r.result, Some(Value::Int(0)));
    }
}

#[test]
fn v3_and_v5_agree_near_the_width_limit() {
    for n in [2_097_000, 2_097_151] {
        assert_eq!(
            cube_v3(&mut Ops::new(), n).unwrap(),
            cube_v5(&mut Ops::new(), n).unwrap()
        );
    }
    assert!(cube_v5(&mut Ops::new(), 2_097_152).is_err());
}
