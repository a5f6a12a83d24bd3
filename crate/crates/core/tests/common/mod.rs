#![allow(dead_code)]

use augdes_core::oracle::AugmentedModel;
use augdes_core::{all_k_subsets, lattice_bib, AugmentationSpec, BlockDesign, CriteriaReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn triples_family() -> Vec<(&'static str, BlockDesign)> {
    let bib = all_k_subsets(5, 3).unwrap();
    vec![
        ("delete {1,10}", bib.delete_blocks(&[0, 9]).unwrap()),
        ("delete {1}", bib.delete_blocks(&[0]).unwrap()),
        ("repeat {1}", bib.repeat_blocks(&[0]).unwrap()),
        ("repeat {1,10}", bib.repeat_blocks(&[0, 9]).unwrap()),
    ]
}

fn random_design(rng: &mut ChaCha8Rng) -> BlockDesign {
    loop {
        let v = rng.gen_range(2..=6);
        let k = rng.gen_range(2..=4);
        let b = rng.gen_range(2..=8);
        if b * k <= v {
            continue;
        }
        let binary = k <= v && rng.gen_bool(0.5);
        let blocks: Vec<Vec<usize>> = (0..b)
            .map(|_| {
                if binary {
                    rand::seq::index::sample(rng, v, k)
                        .into_iter()
                        .map(|x| x + 1)
                        .collect()
                } else {
                    (0..k).map(|_| rng.gen_range(1..=v)).collect()
                }
            })
            .collect();
        let d = BlockDesign::from_blocks(v, blocks).unwrap();
        if d.is_connected() {
            return d;
        }
    }
}

fn random_spec(rng: &mut ChaCha8Rng, b: usize) -> AugmentationSpec {
    if rng.gen_bool(0.5) {
        AugmentationSpec::Common(rng.gen_range(1..=3))
    } else {
        AugmentationSpec::PerBlock((0..b).map(|_| rng.gen_range(1..=3)).collect())
    }
}

/// Connected designs with `bk + S <= 40`: a few named ones followed by
/// seeded random draws.
pub fn corpus(n_random: usize) -> Vec<(BlockDesign, AugmentationSpec)> {
    let mut out = vec![
        (all_k_subsets(5, 3).unwrap(), AugmentationSpec::Common(1)),
        (lattice_bib(2).unwrap(), AugmentationSpec::Common(2)),
        (lattice_bib(3).unwrap(), AugmentationSpec::Common(1)),
        (
            lattice_bib(3).unwrap().dual().unwrap(),
            AugmentationSpec::PerBlock(vec![1, 2, 1, 1, 2, 1, 1, 1, 3]),
        ),
        (
            BlockDesign::from_blocks(3, vec![vec![1, 1, 2], vec![2, 3, 3], vec![1, 2, 3]]).unwrap(),
            AugmentationSpec::Common(2),
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    while out.len() < 5 + n_random {
        let d = random_design(&mut rng);
        let s = random_spec(&mut rng, d.b());
        let plots = d.block_sizes().iter().sum::<usize>() + s.total(d.b());
        if plots <= 40 && s.total(d.b()) >= 2 {
            out.push((d, s));
        }
    }
    out
}

/// All six criteria computed from GLS variances alone, by averaging or
/// maximizing over every pair of the augmented design.
pub fn oracle_criteria(d: &BlockDesign, s: &AugmentationSpec) -> CriteriaReport<f64> {
    let m = AugmentedModel::new(d, s).unwrap();
    let (v, b) = (d.v(), d.b());
    let var = |x: usize, y: usize| m.gls_variance(&m.difference(x, y)).unwrap();
    let tests: Vec<usize> = (0..b)
        .flat_map(|j| (0..s.count(j)).map(move |w| (j, w)))
        .map(|(j, w)| m.rho_index(j, w))
        .collect();

    let mut cc = Vec::new();
    for i in 0..v {
        for is in (i + 1)..v {
            cc.push(var(m.tau_index(i), m.tau_index(is)));
        }
    }
    let mut tt = Vec::new();
    for (x, &p) in tests.iter().enumerate() {
        for &q in &tests[x + 1..] {
            tt.push(var(p, q));
        }
    }
    let mut ct = Vec::new();
    for i in 0..v {
        for &p in &tests {
            ct.push(var(m.tau_index(i), p));
        }
    }
    // MV-criteria range over block pairs, so one test per block suffices.
    let unit = AugmentationSpec::Common(1);
    let m1 = AugmentedModel::new(d, &unit).unwrap();
    let var1 = |x: usize, y: usize| m1.gls_variance(&m1.difference(x, y)).unwrap();
    let mut mv_tt = f64::MIN;
    for j in 0..b {
        for js in (j + 1)..b {
            mv_tt = mv_tt.max(var1(m1.rho_index(j, 0), m1.rho_index(js, 0)));
        }
    }
    let mean = |x: &[f64]| x.iter().sum::<f64>() / x.len() as f64;
    let max = |x: &[f64]| x.iter().copied().fold(f64::MIN, f64::max);
    CriteriaReport {
        a_cc: mean(&cc),
        a_tt: mean(&tt),
        a_ct: mean(&ct),
        mv_cc: max(&cc),
        mv_tt,
        mv_ct: max(&ct),
    }
}
