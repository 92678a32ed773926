use ncsp_core::generate::{disk_lists, grid_lists, random_pairs};
use ncsp_core::mssp::bfs_distances;
use ncsp_core::supergraph::build_supergraphs_with_mode;
use ncsp_core::verify::{audit, check_isp_preservation, IspMode, Witness};
use ncsp_core::{solve, Mode, PlanarEmbedding};
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

fn instance(seed: u64, max_side: usize, max_disk: usize) -> (PlanarEmbedding, Vec<(u32, u32)>) {
    let mut rng = SmallRng::seed_from_u64(seed);
    let lists = if seed % 2 == 0 {
        let w = rng.gen_range(2..=max_side);
        let h = rng.gen_range(2..=max_side);
        grid_lists(w, h, [0.0, 0.3, 0.8][(seed / 2) as usize % 3], &mut rng)
    } else {
        disk_lists(rng.gen_range(3..=max_disk), &mut rng)
    };
    let emb = lists.embed().unwrap();
    let k = rng.gen_range(1..=(emb.outer().len() / 2).max(1));
    let pairs = random_pairs(&emb, k, seed % 3 == 0, &mut rng);
    (emb, pairs)
}

#[test]
fn small_instances_pass_every_oracle() {
    let mut isp_checked = 0;
    for seed in 0..150 {
        let (emb, raw) = instance(seed, 12, 60);
        let sol = solve(&emb, &raw, Mode::Reference).unwrap();
        let rep = audit(&emb, &sol.instance, &sol.genealogy, &sol.union, &sol.paths);
        assert!(rep.passed(), "seed {seed}\n{}", rep.summary());
        for (j, &(a, b)) in raw.iter().enumerate() {
            assert_eq!(sol.input_lengths()[j] as u32, bfs_distances(&emb, a)[b as usize]);
        }
        let steps: Vec<usize> = (1..=sol.instance.len()).collect();
        let mut rng = SmallRng::seed_from_u64(seed);
        let isp = check_isp_preservation(&emb, &sol.timeline, &steps, IspMode::Exhaustive, &mut rng);
        assert!(isp.passed(), "seed {seed}: {:?}", isp.failures.first());
        isp_checked += isp.checked;
    }
    assert!(isp_checked > 10_000);
}

#[test]
fn medium_instances_sampled() {
    for seed in 500..530 {
        let (emb, raw) = instance(seed, 40, 800);
        let sol = solve(&emb, &raw, Mode::Reference).unwrap();
        let rep = audit(&emb, &sol.instance, &sol.genealogy, &sol.union, &sol.paths);
        assert!(rep.passed(), "seed {seed}\n{}", rep.summary());
        let steps = [1, sol.instance.len()];
        let mut rng = SmallRng::seed_from_u64(seed);
        let isp = check_isp_preservation(&emb, &sol.timeline, &steps, IspMode::Sampled { samples: 200 }, &mut rng);
        assert!(isp.passed(), "seed {seed}: {:?}", isp.failures.first());
    }
}

#[test]
fn dropping_a_union_dart_is_caught() {
    for seed in 0..20 {
        let (emb, raw) = instance(seed, 10, 40);
        let sol = solve(&emb, &raw, Mode::Reference).unwrap();
        let mut bad = sol.union.clone();
        let d = bad.y_darts().next().unwrap();
        bad.remove_dart(d);
        let rep = audit(&emb, &sol.instance, &sol.genealogy, &bad, &sol.paths);
        let union = rep.check("union").unwrap();
        assert_eq!(union.failures, [Witness::UnionMissing { dart: d }]);
    }
}

#[test]
fn timeline_is_independent_of_the_solver_entry_point() {
    let (emb, raw) = instance(42, 12, 60);
    let sol = solve(&emb, &raw, Mode::Reference).unwrap();
    let tl = build_supergraphs_with_mode(&emb, &sol.instance, Mode::Reference).unwrap();
    for e in 0..emb.num_edges() {
        assert_eq!(tl.edge_stamp(e), sol.timeline.edge_stamp(e));
    }
}
