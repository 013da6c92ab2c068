//! Fixtures shared by the benchmarks.

use accbt::gridworld::{make_scenario, scripted_policy, step, GridConfig, WorldState};
use accbt::{compile, Compiled};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SURVIVAL_SPEC: &str = include_str!("../../../specs/survival.bt");

pub fn survival() -> Compiled {
    compile(SURVIVAL_SPEC).expect("shipped spec compiles")
}

/// States visited by the scripted tree, spread over both scenarios.
pub fn visited_states(n: usize) -> Vec<WorldState> {
    let c = survival();
    let grid = GridConfig::default();
    let bindings = accbt::SpecBindings::grid(&c.spec.actions);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out = Vec::with_capacity(n);
    let mut mission = 0u64;
    while out.len() < n {
        let mut s = make_scenario(&grid, 1 + (mission % 2) as u8, mission).expect("scenario spawns");
        mission += 1;
        while out.len() < n && s.agent.alive {
            out.push(s.clone());
            let r = accbt::tick(c.tree.root(), &s, &bindings).expect("grid bindings resolve");
            let Some(action) = r.executing_action else { break };
            s = step(&s, scripted_policy(&action, &s).expect("scripted policy exists"), &mut rng);
        }
    }
    out
}
