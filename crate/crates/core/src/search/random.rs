//! Seeded generator of small random tasks for property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::strips::{ActionId, FluentId, FluentSet, GroundAction, Plan, Task};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoalMode {
    /// Goal is a subset of the state reached by a random walk; always solvable.
    RandomWalk,
    /// Goal is a random subset of the fluents.
    Uniform,
    /// Coin flip between the two per seed, so roughly half are solvable.
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomTaskParams {
    pub num_fluents: usize,
    pub num_actions: usize,
    pub max_effect_size: usize,
    pub min_cost: u64,
    pub max_cost: u64,
    pub goal_mode: GoalMode,
}

impl Default for RandomTaskParams {
    fn default() -> RandomTaskParams {
        RandomTaskParams {
            num_fluents: 6,
            num_actions: 8,
            max_effect_size: 2,
            min_cost: 0,
            max_cost: 3,
            goal_mode: GoalMode::Mixed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedTask {
    pub task: Task,
    /// The walk the goal was drawn from, when there was one.
    pub witness: Option<Plan>,
}

fn random_subset(rng: &mut ChaCha8Rng, pool: &[usize], max: usize) -> Vec<usize> {
    let k = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, k).copied().collect()
}

pub fn random_task(seed: u64, params: RandomTaskParams) -> GeneratedTask {
    assert!(params.num_fluents > 0 && params.num_actions > 0 && params.max_effect_size > 0);
    assert!(params.min_cost <= params.max_cost);
    let n = params.num_fluents;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<usize> = (0..n).collect();
    let ids = |v: &[usize]| FluentSet::from_ids(n, v.iter().map(|&i| FluentId(i)));

    let mut actions = Vec::with_capacity(params.num_actions);
    for i in 0..params.num_actions {
        let pre_pos = random_subset(&mut rng, &all, 2);
        let rest: Vec<usize> = all.iter().copied().filter(|f| !pre_pos.contains(f)).collect();
        let pre_neg = random_subset(&mut rng, &rest, 1);
        let k_add = rng.gen_range(1..=params.max_effect_size.min(n));
        let add: Vec<usize> = all.choose_multiple(&mut rng, k_add).copied().collect();
        let rest: Vec<usize> = all.iter().copied().filter(|f| !add.contains(f)).collect();
        let del = random_subset(&mut rng, &rest, params.max_effect_size);
        actions.push(GroundAction {
            name: format!("act{i}"),
            pre_pos: ids(&pre_pos),
            pre_neg: ids(&pre_neg),
            add: ids(&add),
            del: ids(&del),
            cost: Cost::integer(rng.gen_range(params.min_cost..=params.max_cost)),
        });
    }
    let init: Vec<usize> = all.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    let init = ids(&init);

    let walk_mode = match params.goal_mode {
        GoalMode::RandomWalk => true,
        GoalMode::Uniform => false,
        GoalMode::Mixed => rng.gen_bool(0.5),
    };
    let (goal, witness) = if walk_mode {
        let mut s = init.clone();
        let mut steps = Vec::new();
        let len = rng.gen_range(1..=5);
        for _ in 0..len {
            let app: Vec<usize> = (0..actions.len()).filter(|&a| actions[a].is_applicable(&s)).collect();
            let Some(&a) = app.choose(&mut rng) else { break };
            s = actions[a].successor(&s);
            steps.push(ActionId(a));
        }
        let held: Vec<usize> = s.iter().map(|f| f.0).collect();
        let k = rng.gen_range(1..=3usize).min(held.len());
        let goal: Vec<usize> = held.choose_multiple(&mut rng, k).copied().collect();
        (ids(&goal), Some(Plan::new(steps)))
    } else {
        let k = rng.gen_range(1..=3usize.min(n));
        let goal: Vec<usize> = all.choose_multiple(&mut rng, k).copied().collect();
        (ids(&goal), None)
    };

    let task = Task::new((0..n).map(|i| format!("p{i}")).collect(), actions, init, goal)
        .expect("generator respects task invariants");
    GeneratedTask { task, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Validation;

    #[test]
    fn deterministic_in_seed() {
        let p = RandomTaskParams::default();
        assert_eq!(random_task(7, p).task, random_task(7, p).task);
        assert_ne!(random_task(7, p).task, random_task(8, p).task);
    }

    #[test]
    fn respects_shape() {
        let p = RandomTaskParams { num_fluents: 6, num_actions: 8, ..Default::default() };
        for seed in 0..50 {
            let t = random_task(seed, p).task;
            assert_eq!(t.num_fluents(), 6);
            assert_eq!(t.actions().len(), 8);
            for a in t.actions() {
                assert!(a.add.is_disjoint(&a.del));
                assert!(a.pre_pos.is_disjoint(&a.pre_neg));
                assert!(!a.add.is_empty());
            }
        }
    }

    #[test]
    fn walk_witness_reaches_goal() {
        let p = RandomTaskParams { goal_mode: GoalMode::RandomWalk, ..Default::default() };
        for seed in 0..200 {
            let g = random_task(seed, p);
            assert_eq!(g.task.validate(g.witness.as_ref().unwrap()), Validation::GoalReaching);
        }
    }
}
