use exrec_core::bits::BitVec;
use exrec_core::decoders::cyclic::{rotate, table_file, CyclicDecoder, MeggittTable};
use exrec_core::decoders::nonbinary::NonbinaryDecoder;
use exrec_core::decoders::surface::{CheckType, Defect, SurfaceDecoder};
use exrec_core::decoders::verify::exhaustive_size;
use exrec_core::decoders::*;
use exrec_core::stabilizer::{build_code, CodeSpec, Pauli, StabilizerCode};
use exrec_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(spec: CodeSpec) -> (StabilizerCode, std::sync::Arc<dyn Decoder>) {
    let code = build_code(spec).unwrap();
    let dec = decoder(spec, &code, &DecoderOptions::default()).unwrap();
    (code, dec)
}

#[test]
fn exhaustive_scans_pass_for_catalog_codes() {
    for spec in CodeSpec::all() {
        if spec == CodeSpec::Qr47 {
            continue;
        }
        let (code, dec) = setup(spec);
        assert!(exhaustive_size(spec, &code) <= verify::EXHAUSTIVE_BUDGET, "{}", code.id);
        let rep = verify_decoder(spec, &code, dec.as_ref(), VerifyMode::Exhaustive).unwrap();
        for c in &rep.classes {
            assert_eq!(c.failed, 0, "{} class {}: first failure {:?}", code.id, c.name, c.examples.first());
        }
    }
}

#[test]
fn golay_corrects_all_2048_x_patterns() {
    let (code, dec) = setup(CodeSpec::Golay);
    let rep = verify_decoder(CodeSpec::Golay, &code, dec.as_ref(), VerifyMode::Exhaustive).unwrap();
    let x = rep.classes.iter().find(|c| c.name == "x").unwrap();
    assert_eq!(x.checked, 2048);
    assert_eq!(x.failed, 0);
}

#[test]
fn zero_syndrome_gives_identity() {
    for spec in CodeSpec::all() {
        let (code, dec) = setup(spec);
        let s = BitVec::zeros(code.stabilizers.len());
        assert!(dec.decode(&s).is_identity(), "{}", code.id);
    }
}

#[test]
fn every_syndrome_returns_to_code_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for spec in CodeSpec::all() {
        let (code, dec) = setup(spec);
        let r = code.stabilizers.len();
        for _ in 0..200 {
            let idx: Vec<usize> = (0..r).filter(|_| rng.gen_bool(0.5)).collect();
            let s = BitVec::from_indices(r, &idx);
            assert_eq!(code.syndrome(&dec.decode(&s)).unwrap(), s, "{}", code.id);
        }
    }
}

/// Brute-force minimum weight of each X-syndrome class of the Steane code.
#[test]
fn steane_lookup_matches_brute_force_coset_leaders() {
    let code = build_code(CodeSpec::Steane).unwrap();
    let css = code.css().unwrap();
    let dec = css_decoder(CodeSpec::Steane, &code, &DecoderOptions::default()).unwrap();
    let mut best = [usize::MAX; 8];
    for e in 0..1u64 << 7 {
        let v = BitVec::from_u64(7, e);
        let s = css.hz.mul_vec(&v).as_u64() as usize;
        best[s] = best[s].min(v.weight());
    }
    for (s, &w) in best.iter().enumerate() {
        let syn = BitVec::from_u64(3, s as u64);
        let c = dec.correct_x(&syn);
        assert_eq!(css.hz.mul_vec(&c), syn);
        assert_eq!(c.weight(), w);
        assert!(w <= 1);
    }
}

#[test]
fn five_qubit_single_errors_are_unique() {
    let (code, dec) = setup(CodeSpec::FiveQubit);
    for q in 0..5 {
        for p in 1..=3 {
            let e = Pauli::single(5, q, p);
            assert_eq!(dec.decode(&code.syndrome(&e).unwrap()), e);
        }
    }
}

#[test]
fn golay_weight_four_falls_back_to_code_space() {
    let (code, dec) = setup(CodeSpec::Golay);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let idx = rand::seq::index::sample(&mut rng, 23, 4).into_vec();
        let e = Pauli::x_type(BitVec::from_indices(23, &idx));
        let r = residual(&code, dec.as_ref(), &e).unwrap();
        assert!(code.syndrome(&r).unwrap().is_zero());
    }
}

#[test]
fn meggitt_is_shift_covariant() {
    let code = build_code(CodeSpec::Golay).unwrap();
    let css = code.css().unwrap();
    let dec = CyclicDecoder::build(&code, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let e = rng.gen::<u64>() & ((1 << 23) - 1);
        let k = rng.gen_range(1..23);
        let c = dec.correct_x(&css.hz.mul_vec(&BitVec::from_u64(23, e))).as_u64();
        let e2 = rotate(e, k, 23);
        let c2 = dec.correct_x(&css.hz.mul_vec(&BitVec::from_u64(23, e2))).as_u64();
        assert_eq!(c2, rotate(c, k, 23));
    }
}

#[test]
fn poly21_three_bits_in_one_symbol_are_one_error() {
    let (code, dec) = setup(CodeSpec::Polynomial21);
    for s in 0..7 {
        let e = Pauli::z_type(BitVec::from_indices(21, &[3 * s, 3 * s + 1, 3 * s + 2]));
        let r = residual(&code, dec.as_ref(), &e).unwrap();
        assert!(r.is_identity() || (code.syndrome(&r).unwrap().is_zero() && !code.anticommutes_with_logical(&r)));
    }
}

/// The [7,4] code over GF(8) has distance 4: some pairs of symbol errors
/// share a syndrome with other pairs, so they cannot all be corrected.
#[test]
fn poly21_two_symbol_errors_are_beyond_reach() {
    let spec = CodeSpec::Polynomial21;
    let code = build_code(spec).unwrap();
    let d = NonbinaryDecoder::new(spec, &code).unwrap();
    let mut missed = 0;
    for a in 0..7 {
        for b in a + 1..7 {
            for x in 1..8u16 {
                for y in 1..8u16 {
                    let mut w = vec![0u16; 7];
                    w[a] = x;
                    w[b] = y;
                    if d.decode_word(&w) != Some(vec![(a, x), (b, y)]) && d.decode_word(&w) != Some(vec![(b, y), (a, x)]) {
                        missed += 1;
                    }
                }
            }
        }
    }
    assert!(missed > 0);
}

#[test]
fn poly60_symbol_table_size() {
    let spec = CodeSpec::Polynomial60;
    let code = build_code(spec).unwrap();
    let d = NonbinaryDecoder::new(spec, &code).unwrap();
    // 15 amplitudes at the top location times up to two more (location, amplitude) pairs
    let want = 15 * (1 + 14 * 15 + 91 * 225);
    assert_eq!(d.table_len(), want);
}

#[test]
fn bacon_shor_corrects_up_to_gauge() {
    let (code, dec) = setup(CodeSpec::BaconShor(3));
    for q in 0..9 {
        for p in 1..=3 {
            let r = residual(&code, dec.as_ref(), &Pauli::single(9, q, p)).unwrap();
            assert!(code.syndrome(&r).unwrap().is_zero());
            assert!(!code.anticommutes_with_logical(&r));
        }
    }
}

#[test]
fn bacon_shor_majority_boundary() {
    let (code, dec) = setup(CodeSpec::BaconShor(5));
    let col_errors = |cols: &[usize]| {
        let idx: Vec<usize> = cols.iter().map(|&c| 2 * 5 + c).collect();
        Pauli::x_type(BitVec::from_indices(25, &idx))
    };
    for cols in [vec![0, 3], vec![1, 4], vec![2]] {
        let r = residual(&code, dec.as_ref(), &col_errors(&cols)).unwrap();
        assert!(!code.anticommutes_with_logical(&r), "{cols:?}");
    }
    for cols in [vec![0, 1, 2], vec![1, 3, 4]] {
        let r = residual(&code, dec.as_ref(), &col_errors(&cols)).unwrap();
        assert!(code.syndrome(&r).unwrap().is_zero());
        assert!(code.anticommutes_with_logical(&r), "{cols:?}");
    }
}

#[test]
fn surface_bulk_error_is_matched_exactly() {
    let (code, dec) = setup(CodeSpec::Surface(3));
    let centre = 6;
    let e = Pauli::single(13, centre, 2);
    assert_eq!(code.syndrome(&e).unwrap().weight(), 2);
    assert_eq!(dec.decode(&code.syndrome(&e).unwrap()), e);
}

fn brute_force_cost(d: &SurfaceDecoder, ty: CheckType, defects: &[Defect], left: &mut Vec<usize>) -> usize {
    let Some(a) = left.pop() else { return 0 };
    let mut best = d.boundary_distance(ty, defects[a].check) + brute_force_cost(d, ty, defects, left);
    for i in 0..left.len() {
        let b = left.remove(i);
        let w = d.distance(ty, defects[a].check, defects[b].check) + defects[a].round.abs_diff(defects[b].round);
        best = best.min(w + brute_force_cost(d, ty, defects, left));
        left.insert(i, b);
    }
    left.push(a);
    best
}

#[test]
fn matching_is_minimum_weight() {
    let d = SurfaceDecoder::new(5);
    let nchecks = d.layout.stars.len();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..300 {
        let ty = if trial % 2 == 0 { CheckType::Star } else { CheckType::Plaquette };
        let k = rng.gen_range(1..=8);
        let defects: Vec<Defect> =
            (0..k).map(|_| Defect { round: rng.gen_range(0..3), check: rng.gen_range(0..nchecks) }).collect();
        let ours: usize = d
            .match_defects(ty, &defects, None)
            .iter()
            .map(|&(a, b)| match b {
                Some(b) => d.distance(ty, defects[a].check, defects[b].check) + defects[a].round.abs_diff(defects[b].round),
                None => d.boundary_distance(ty, defects[a].check),
            })
            .sum();
        let mut left: Vec<usize> = (0..k).collect();
        assert_eq!(ours, brute_force_cost(&d, ty, &defects, &mut left), "{defects:?}");
    }
}

#[test]
fn concat49_problem_case_uses_c2() {
    let (code, dec) = setup(CodeSpec::Concat49);
    // a pair in register 2 and a pair in register 5
    let e = Pauli::x_type(BitVec::from_indices(49, &[14, 15, 35, 38]));
    let r = residual(&code, dec.as_ref(), &e).unwrap();
    assert!(code.syndrome(&r).unwrap().is_zero());
    assert!(!code.anticommutes_with_logical(&r));
}

#[test]
fn qr47_table_persists_and_loads() {
    let code = build_code(CodeSpec::Qr47).unwrap();
    let dir = std::env::temp_dir().join(format!("exrec-qr47-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let opts = DecoderOptions { table_dir: Some(dir.clone()) };
    match css_decoder(CodeSpec::Qr47, &code, &opts) {
        Err(Error::Resource(_)) => {}
        other => panic!("expected a resource error, got {:?}", other.map(|d| d.name())),
    }
    let built = CyclicDecoder::build(&code, 5).unwrap();
    assert_eq!(built.table.entries.len(), 179_447);
    built.table.save(&dir.join(table_file(&code.id))).unwrap();
    let back = MeggittTable::load(&dir.join(table_file(&code.id))).unwrap();
    assert_eq!(back, built.table);
    let dec = decoder(CodeSpec::Qr47, &code, &opts).unwrap();
    let rep = verify_decoder(CodeSpec::Qr47, &code, dec.as_ref(), VerifyMode::Sampled { samples: 200_000, seed: 1 }).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let idx = rand::seq::index::sample(&mut rng, 47, 6).into_vec();
        let r = residual(&code, dec.as_ref(), &Pauli::z_type(BitVec::from_indices(47, &idx))).unwrap();
        assert!(code.syndrome(&r).unwrap().is_zero());
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
