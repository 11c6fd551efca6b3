//! Acceptance suite: one test per criterion, each printing a pass line
//! (visible with `cargo test --test acceptance -- --nocapture`). Every
//! threshold is an exact integer or rational comparison; nothing here is
//! tuned after the fact.
//!
//! The companion criterion on byte-identical CLI output lives in the CLI
//! crate's own acceptance test, next to the binary it exercises.

use std::time::{Duration, Instant};

use duoloc::mechanisms::{
    alpha_left_right, fmne, lr_for_parity, priority_dictatorship, two_extremes, MechanismId,
};
use duoloc::oracle::{fmne_ratio_term_max, optimal_cost};
use duoloc::verify::{
    check_family, check_mc_pair_bound, check_mc_triple_bound, check_sc_bound,
    check_strategyproof, ratio_sweep, search_tables, verify_table, EmptyNodes, InstanceFamily,
    MaxRatio, PrefDomain, ProfileFamily, TableSearchResult,
};
use duoloc::{
    max_cost, mirror_instance, mirror_solution, occupied_window, social_cost, Agent,
    ApprovalPair, LineInstance, Objective, Rational, Solution,
};

const F1: ApprovalPair = ApprovalPair::F1_ONLY;
const F2: ApprovalPair = ApprovalPair::F2_ONLY;

fn instance(m: u32, agents: &[(u32, ApprovalPair)]) -> LineInstance {
    LineInstance::new(m, agents.iter().map(|&(p, t)| Agent::new(p, t)).collect()).unwrap()
}

/// Five agents filling five nodes: two facility-2 approvers then three
/// facility-1 approvers. The fixed branch is off by a factor of 3 here.
fn tightness_fixed() -> LineInstance {
    instance(5, &[(1, F2), (2, F2), (3, F1), (4, F1), (5, F1)])
}

/// Six agents on seven nodes, the last node empty: three facility-2
/// approvers then three facility-1 approvers. The median-nearest-empty
/// branch is off by a factor of 17/4 here.
fn tightness_empty() -> LineInstance {
    instance(7, &[(1, F2), (2, F2), (3, F2), (4, F1), (5, F1), (6, F1)])
}

fn best_of<F: FnMut()>(runs: u32, mut f: F) -> Duration {
    (0..runs)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed()
        })
        .min()
        .expect("at least one run")
}

#[test]
fn criterion_1_golden_tightness_instances() {
    let fixed = tightness_fixed();
    assert_eq!(fmne(&fixed), Solution::new(2, 3));
    assert_eq!(social_cost(&fixed, Solution::new(2, 3)).unwrap(), 9);
    let opt = optimal_cost(&fixed, Objective::SocialCost);
    assert_eq!(opt.value, 3);
    assert_eq!(Rational::new(9, 3), Rational::from_integer(3));

    let empty = tightness_empty();
    assert_eq!(fmne(&empty), Solution::new(5, 7));
    assert_eq!(social_cost(&empty, Solution::new(5, 7)).unwrap(), 17);
    let opt = optimal_cost(&empty, Objective::SocialCost);
    assert_eq!(opt.value, 4);
    assert_eq!(Rational::new(17, 4), Rational::new(17, 4));

    let fixed_time = best_of(5, || {
        let sol = fmne(&fixed);
        assert_eq!(social_cost(&fixed, sol).unwrap(), 9);
        assert_eq!(optimal_cost(&fixed, Objective::SocialCost).value, 3);
    });
    let empty_time = best_of(5, || {
        let sol = fmne(&empty);
        assert_eq!(social_cost(&empty, sol).unwrap(), 17);
        assert_eq!(optimal_cost(&empty, Objective::SocialCost).value, 4);
    });
    assert!(fixed_time < Duration::from_millis(1), "fixed-branch eval took {fixed_time:?}");
    assert!(empty_time < Duration::from_millis(1), "empty-branch eval took {empty_time:?}");
    println!(
        "acceptance criterion 1: PASS: golden instances give ratios 3 and 17/4 \
         ({fixed_time:?} and {empty_time:?} per eval)"
    );
}

#[test]
fn criterion_2_exhaustive_strategyproofness() {
    let report = check_family(|i| Ok(fmne(i)), &InstanceFamily::up_to(6)).unwrap();
    assert!(report.is_strategyproof(), "fmne violation: {:?}", report.violation);
    let fmne_checked = report.instances_checked;

    let mut alpha_checks = 0u64;
    for inst in InstanceFamily::up_to(6).iter() {
        let window_m = occupied_window(&inst).instance.m();
        for alpha in 1..window_m {
            let violation =
                check_strategyproof(|i| alpha_left_right(i, alpha), &inst, PrefDomain::Default)
                    .unwrap();
            assert!(violation.is_none(), "alr:{alpha} violation on [{inst}]: {violation:?}");
            alpha_checks += 1;
        }
        let violation =
            check_strategyproof(|i| Ok(lr_for_parity(i)), &inst, PrefDomain::Default).unwrap();
        assert!(violation.is_none(), "alr:auto violation on [{inst}]: {violation:?}");
    }

    let family = InstanceFamily::up_to(7).with_n(3, 3);
    let report = check_family(priority_dictatorship, &family).unwrap();
    assert!(report.is_strategyproof(), "pd3 violation: {:?}", report.violation);
    println!(
        "acceptance criterion 2: PASS: no profitable misreport for fmne ({fmne_checked} \
         instances), alr ({alpha_checks} instance/alpha pairs), pd3 ({} instances)",
        report.instances_checked
    );
}

#[test]
fn criterion_3_fmne_social_cost_sweeps() {
    let no_empty = InstanceFamily { m_min: 5, m_max: 8, ..InstanceFamily::default() }
        .with_n(5, 8)
        .with_empty_nodes(EmptyNodes::None);
    let report =
        ratio_sweep(|i| Ok(fmne(i)), "fmne", Objective::SocialCost, no_empty.iter()).unwrap();
    assert_eq!(report.max_ratio, MaxRatio::Bounded(Rational::from_integer(3)));
    let fully_occupied = report.instances_checked;

    let with_empty = InstanceFamily { m_max: 8, ..InstanceFamily::default() }
        .with_n(6, 8)
        .with_empty_nodes(EmptyNodes::AtLeastOne);
    let report =
        ratio_sweep(|i| Ok(fmne(i)), "fmne", Objective::SocialCost, with_empty.iter()).unwrap();
    assert_eq!(report.max_ratio, MaxRatio::Bounded(Rational::new(17, 4)));

    // The golden empty-node instance attains the maximum.
    let empty = tightness_empty();
    let value = social_cost(&empty, fmne(&empty)).unwrap();
    let optimal = optimal_cost(&empty, Objective::SocialCost).value;
    assert_eq!(Rational::new(value as i64, optimal as i64), Rational::new(17, 4));
    println!(
        "acceptance criterion 3: PASS: fmne sweeps give exactly 3 ({fully_occupied} fully \
         occupied instances) and exactly 17/4 ({} instances with empty nodes)",
        report.instances_checked
    );
}

#[test]
fn criterion_4_alr_auto_max_cost_sweep() {
    let family = InstanceFamily::up_to(7);
    let report =
        ratio_sweep(|i| Ok(lr_for_parity(i)), "alr:auto", Objective::MaxCost, family.iter())
            .unwrap();
    let MaxRatio::Bounded(max) = report.max_ratio else {
        panic!("alr:auto sweep must stay bounded");
    };
    assert!(max <= Rational::from_integer(2), "max ratio {max} exceeds 2");
    // The bound is tight: it is attained within the family.
    assert_eq!(max, Rational::from_integer(2));
    println!(
        "acceptance criterion 4: PASS: alr:auto max-cost ratio exactly 2 over {} instances",
        report.instances_checked
    );
}

#[test]
fn criterion_5_pd3_three_agent_sweep() {
    let family = InstanceFamily { m_min: 3, m_max: 8, ..InstanceFamily::default() }.with_n(3, 3);
    let report = ratio_sweep(
        priority_dictatorship,
        "pd3",
        Objective::SocialCost,
        family.iter(),
    )
    .unwrap();
    assert_eq!(report.max_ratio, MaxRatio::Bounded(Rational::new(4, 3)));
    println!(
        "acceptance criterion 5: PASS: pd3 social-cost ratio exactly 4/3 over {} three-agent \
         instances",
        report.instances_checked
    );
}

#[test]
fn criterion_6_lower_bound_table_searches() {
    let family = ProfileFamily::full(3, vec![1, 2, 3], PrefDomain::Default).unwrap();
    assert_eq!(family.len(), 27);

    let mc = search_tables(&family, Objective::MaxCost, Rational::from_integer(2), true).unwrap();
    assert!(mc.is_unsat(), "a table beating max-cost 2 would refute the lower bound");

    let sc = search_tables(&family, Objective::SocialCost, Rational::new(4, 3), true).unwrap();
    assert!(sc.is_unsat(), "a table beating social-cost 4/3 would refute the lower bound");

    let relaxed = Rational::new(4, 3) + Rational::new(1, 100);
    let sat = search_tables(&family, Objective::SocialCost, relaxed, true).unwrap();
    let TableSearchResult::Sat(table) = &sat else {
        panic!("a witness exists above 4/3: the three-agent mechanism is one");
    };
    assert_eq!(
        verify_table(&family, Objective::SocialCost, relaxed, true, table).unwrap(),
        Ok(())
    );

    // The three-agent priority mechanism is itself a valid witness.
    let pd3_table: Vec<Solution> = (0..family.len())
        .map(|p| priority_dictatorship(&family.instance(p).unwrap()).unwrap())
        .collect();
    assert_eq!(
        verify_table(&family, Objective::SocialCost, relaxed, true, &pd3_table).unwrap(),
        Ok(())
    );
    println!(
        "acceptance criterion 6: PASS: UNSAT at mc<2 and sc<4/3, SAT at sc<4/3+1/100 with \
         replayed witness"
    );
}

#[test]
fn criterion_7_analytic_bound_suite() {
    let family = InstanceFamily::up_to(7);
    let sc_checked = check_sc_bound(&family).unwrap().expect("sc bound must hold");
    let pair_checked = check_mc_pair_bound(&family).unwrap().expect("pair bound must hold");
    let triple_checked =
        check_mc_triple_bound(&family).unwrap().expect("triple bound must hold");

    let (max, argmax) = fmne_ratio_term_max(200);
    assert_eq!(max, Rational::new(13, 4));
    assert_eq!(argmax, (3, 3));
    println!(
        "acceptance criterion 7: PASS: bounds hold on {sc_checked} instances, {pair_checked} \
         pairs, {triple_checked} triples; ratio term peaks at 13/4 = f(3,3)"
    );
}

#[test]
fn criterion_8_feasibility_and_witness_properties() {
    let mut outputs = 0u64;
    for inst in InstanceFamily::up_to(6).iter() {
        for id in [MechanismId::Fmne, MechanismId::AlphaLeftRightAuto, MechanismId::TwoExtremes] {
            let sol = id.apply(&inst).unwrap();
            inst.check_feasible(sol).unwrap();
            outputs += 1;
        }
        let window_m = occupied_window(&inst).instance.m();
        for alpha in 1..window_m {
            let sol = alpha_left_right(&inst, alpha).unwrap();
            inst.check_feasible(sol).unwrap();
            outputs += 1;
        }
        if inst.n() == 3 {
            let sol = priority_dictatorship(&inst).unwrap();
            inst.check_feasible(sol).unwrap();
            outputs += 1;
        }
    }

    // Mirror symmetry of the objectives, exhaustively at small scale.
    for inst in InstanceFamily::up_to(4).iter() {
        let mirrored = mirror_instance(&inst);
        assert_eq!(mirror_instance(&mirrored), inst);
        let m = inst.m();
        for z1 in 1..=m {
            for z2 in 1..=m {
                if z1 == z2 {
                    continue;
                }
                let sol = Solution::new(z1, z2);
                let msol = mirror_solution(m, sol);
                assert_eq!(
                    social_cost(&inst, sol).unwrap(),
                    social_cost(&mirrored, msol).unwrap()
                );
                assert_eq!(max_cost(&inst, sol).unwrap(), max_cost(&mirrored, msol).unwrap());
            }
        }
    }

    // Oracle witnesses replay to their reported values.
    for inst in InstanceFamily::up_to(5).iter() {
        for objective in [Objective::SocialCost, Objective::MaxCost] {
            let opt = optimal_cost(&inst, objective);
            inst.check_feasible(opt.witness).unwrap();
            assert_eq!(objective.evaluate(&inst, opt.witness).unwrap(), opt.value);
        }
    }

    // Two-extremes feasibility holds even though its truthfulness does
    // not; its misreport status is reported by sp-check, not asserted.
    let report =
        check_family(|i| Ok(two_extremes(i)), &InstanceFamily::up_to(6)).unwrap();
    assert!(!report.is_strategyproof());
    println!(
        "acceptance criterion 8: PASS: {outputs} mechanism outputs feasible, mirror and \
         witness-replay invariants hold"
    );
}
