use gstruct::oracle::enumerate_structures;
use gstruct::sampler::{sample_block_sequence, Sampler, SamplerTables};
use gstruct::series::SeriesBundle;
use gstruct::StructureParams;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

#[test]
fn sampler_law_equals_census_up_to_ten() {
    for g in 0..=2 {
        for pp in StructureParams::all_with_gamma(g).into_iter().filter(|p| p.stack() <= 2) {
            let tables = SamplerTables::new(&SeriesBundle::solve(pp, 11).unwrap(), 10).unwrap();
            for n in 0..=10 {
                let stats = enumerate_structures(n, pp).unwrap();
                let law = tables.sequence_law(n).unwrap();
                assert_eq!(law.len(), stats.sequences.len(), "{pp} n={n}");
                for (seq, c) in &stats.sequences {
                    assert_eq!(law[seq], BigRational::new(BigInt::from(*c), BigInt::from(stats.count)));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn same_seed_same_stream(seed in any::<u64>(), n in 0usize..40) {
        let pp = StructureParams::new(1, 2, 2).unwrap();
        prop_assert_eq!(sample_block_sequence(pp, n, seed).unwrap(), sample_block_sequence(pp, n, seed).unwrap());
    }

    #[test]
    fn samples_cover_the_backbone(seed in any::<u64>(), n in 0usize..50) {
        let pp = StructureParams::new(2, 1, 1).unwrap();
        let mut s = Sampler::new(SamplerTables::new(&SeriesBundle::solve(pp, 51).unwrap(), 50).unwrap(), seed);
        let x = s.sample(n).unwrap();
        prop_assert_eq!(x.blocks.iter().map(|b| b.0).sum::<usize>(), n);
        prop_assert!(x.blocks.iter().all(|b| b.0 >= 1));
        prop_assert_eq!(x.total, n);
    }
}
