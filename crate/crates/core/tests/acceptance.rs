//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::time::{Duration, Instant};

use weaknet::engine::{self, Engine, EngineConfig, Mode, RunResult, RunStatus};
use weaknet::text::{parse, print_config, print_system};
use weaknet::{fixtures, Configuration, InteractionSystem};

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn system(src: &str) -> InteractionSystem {
    parse(src).expect("fixture parses")
}

fn run(sys: &InteractionSystem, config: EngineConfig) -> Result<RunResult, String> {
    engine::run(sys, None, config).map_err(|e| e.to_string())
}

fn counts(r: &RunResult) -> (u64, u64, u64) {
    (r.stats.interactions, r.stats.indirections, r.stats.delegations)
}

fn config_of(src: &str) -> Configuration {
    system(src).nets.swap_remove(0).config
}

fn omega_golden() -> Outcome {
    let r = run(&system(fixtures::OMEGA), EngineConfig::needed())?;
    let printed = print_config(&r.residual, false);
    ensure(printed == "!P = Alxx;\n", || format!("residual {printed:?}"))?;
    ensure(r.status == RunStatus::Normal, || format!("status {:?}", r.status))?;
    ensure(counts(&r) == (5, 4, 5), || format!("stats {:?}", counts(&r)))?;
    ensure(r.stats.steps == 14, || format!("steps {}", r.stats.steps))?;
    Ok("residual !P = Alxx, 5/4/5, 14 steps".into())
}

fn order_independence() -> Outcome {
    let sys = system(fixtures::OMEGA);
    let start = Instant::now();
    for seed in 1..=50 {
        let r = run(
            &sys,
            EngineConfig {
                shuffle_seed: Some(seed),
                ..EngineConfig::needed()
            },
        )?;
        let printed = print_config(&r.residual, false);
        ensure(printed == "!P = Alxx;\n", || format!("seed {seed}: residual {printed:?}"))?;
        ensure(counts(&r) == (5, 4, 5), || format!("seed {seed}: stats {:?}", counts(&r)))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("50 seeds agree in {elapsed:.2?}"))
}

fn add_differential() -> Outcome {
    let sys = system(fixtures::ADD);
    let header = "agent Z/0 agent S/1 agent Add/2 agent Res/0";

    let weak = run(&sys, EngineConfig::needed())?;
    let expected = config_of(&format!("{header} net {{ !Res = S(n0); Z = Add(n0, n1); S(Z) = n1; }}"));
    ensure(weak.residual.equivalent(&expected), || {
        format!("needed residual {:?}", print_config(&weak.residual, true))
    })?;
    ensure(counts(&weak) == (1, 1, 1), || format!("needed stats {:?}", counts(&weak)))?;

    let full = run(&sys, EngineConfig::full())?;
    let expected_full = config_of(&format!("{header} net {{ Res = S(S(Z)); }}"));
    ensure(full.residual.equivalent(&expected_full), || {
        format!("full residual {:?}", print_config(&full.residual, true))
    })?;

    let resumed = Engine::load_configuration(&sys, &weak.residual, EngineConfig::full())
        .map_err(|e| e.to_string())?
        .run();
    ensure(resumed.residual.equivalent(&full.residual), || {
        format!("needed-then-full {:?}", print_config(&resumed.residual, true))
    })?;
    Ok("needed 1/1/1, full Res = S(S(Z)), needed-then-full agrees".into())
}

fn constant_work() -> Outcome {
    let start = Instant::now();
    let mut rows = Vec::new();
    for depth in [10u64, 100, 1000, 10_000] {
        let r = run(&system(&fixtures::delegation_chain(depth as usize)), EngineConfig::needed())?;
        ensure(print_config(&r.residual, false) == "!L = E;\n", || {
            format!("depth {depth}: unexpected residual")
        })?;
        rows.push((depth, r.stats.steps, r.stats.max_ops_per_step));
    }
    let elapsed = start.elapsed();
    let ops: Vec<u64> = rows.iter().map(|r| r.2).collect();
    ensure(ops.iter().all(|&o| o == ops[0]), || format!("max_ops_per_step {ops:?}"))?;
    // Linear: the per-depth slope is the same integer between every pair of
    // depths, and the intercept is constant.
    let (d0, s0, _) = rows[0];
    let (d1, s1, _) = rows[1];
    let slope = (s1 - s0) / (d1 - d0);
    ensure((s1 - s0) % (d1 - d0) == 0 && slope > 0, || format!("steps {rows:?}"))?;
    let intercept = s0 - slope * d0;
    for &(d, s, _) in &rows {
        ensure(s == slope * d + intercept, || format!("steps not linear: {rows:?}"))?;
    }
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "max_ops_per_step {} at every depth, steps = {slope}d + {intercept}, {elapsed:.2?}",
        ops[0]
    ))
}

fn invariant_suite() -> Outcome {
    let mut runs = 0;
    let mut steps = 0;
    let mut suite: Vec<(String, InteractionSystem)> = vec![
        ("omega".into(), system(fixtures::OMEGA)),
        ("add".into(), system(fixtures::ADD)),
    ];
    for depth in [1, 10, 100] {
        suite.push((format!("chain{depth}"), system(&fixtures::delegation_chain(depth))));
    }
    for (name, sys) in &suite {
        for mode in [Mode::Needed, Mode::Full] {
            for seed in [None, Some(1), Some(2), Some(3)] {
                let r = run(
                    sys,
                    EngineConfig {
                        mode,
                        shuffle_seed: seed,
                        audit: true,
                        ..EngineConfig::default()
                    },
                )?;
                ensure(r.violations.is_empty(), || {
                    format!("{name} {mode} {seed:?}: {}", r.violations.join("; "))
                })?;
                runs += 1;
                steps += r.stats.steps;
            }
        }
    }
    Ok(format!("0 violations over {runs} runs, {steps} steps"))
}

fn round_trip() -> Outcome {
    let sources = [fixtures::OMEGA.to_string(), fixtures::ADD.to_string()];
    for src in &sources {
        let once = print_system(&system(src));
        let twice = print_system(&system(&once));
        ensure(once == twice, || format!("not a fixed point:\n{once}\nvs\n{twice}"))?;
    }
    for (src, mode) in [
        (fixtures::OMEGA, Mode::Needed),
        (fixtures::ADD, Mode::Needed),
        (fixtures::ADD, Mode::Full),
    ] {
        let sys = system(src);
        let config = EngineConfig {
            mode,
            ..EngineConfig::default()
        };
        let first = print_config(&run(&sys, config.clone())?.residual, true);
        for i in 0..100 {
            let again = print_config(&run(&sys, config.clone())?.residual, true);
            ensure(again == first, || format!("run {i} differs"))?;
        }
    }
    Ok("fixtures are print/parse fixed points, canonical output stable over 100 runs".into())
}

fn main() {
    let checks: [Check; 6] = [
        ("omega_golden", omega_golden),
        ("order_independence", order_independence),
        ("add_differential", add_differential),
        ("constant_work", constant_work),
        ("invariant_suite", invariant_suite),
        ("round_trip", round_trip),
    ];
    // Deep chains are parsed and dropped recursively.
    let failures = std::thread::Builder::new()
        .stack_size(512 << 20)
        .spawn(move || {
            let mut failures = 0;
            for (name, check) in checks {
                match check() {
                    Ok(detail) => println!("PASS {name}: {detail}"),
                    Err(detail) => {
                        failures += 1;
                        println!("FAIL {name}: {detail}");
                    }
                }
            }
            failures
        })
        .unwrap()
        .join()
        .unwrap();
    if failures > 0 {
        std::process::exit(1);
    }
}
