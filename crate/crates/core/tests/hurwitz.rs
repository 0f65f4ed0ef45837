use fibrato::hurwitz::{
    solve_source_genus, source_genus_by_ramification, BranchDatum, HurwitzError, Realizability,
};
use proptest::prelude::*;

#[test]
fn genus_three_base_cover_has_genus_one() {
    // the base cover ((3),(3),(3)) forces an elliptic source curve
    let parts = vec![vec![3], vec![3], vec![3]];
    assert_eq!(solve_source_genus(0, 3, &parts).unwrap(), 1);
    let b = BranchDatum::new(Some(1), 0, 3, parts.clone());
    assert_eq!(b.realizability().unwrap(), Realizability::Realizable);
    let stated = BranchDatum::new(Some(2), 0, 3, parts);
    assert!(!stated.is_compatible().unwrap());
}

#[test]
fn json_interface() {
    let b: BranchDatum =
        serde_json::from_str(r#"{"g_target":0,"m":3,"d":4,"partitions":[[4],[4],[2,2]]}"#).unwrap();
    assert_eq!(b.g_source, None);
    assert_eq!(
        solve_source_genus(b.g_target, b.d, &b.partitions).unwrap(),
        1
    );
    let mismatch = BranchDatum { m: 2, ..b };
    assert!(matches!(
        mismatch.validate(),
        Err(HurwitzError::InvalidDatum(_))
    ));
}

fn partition_of(d: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=d, 1..=d as usize).prop_map(move |raw| {
        let mut left = d;
        let mut out = Vec::new();
        for x in raw {
            if left == 0 {
                break;
            }
            let take = x.min(left);
            out.push(take);
            left -= take;
        }
        if left > 0 {
            out.push(left);
        }
        out
    })
}

fn datum() -> impl Strategy<Value = (u32, u32, Vec<Vec<u32>>)> {
    (2u32..9, 0u32..3).prop_flat_map(|(d, h)| {
        (
            Just(d),
            Just(h),
            prop::collection::vec(partition_of(d), 0..6),
        )
    })
}

proptest! {
    #[test]
    fn solved_genus_round_trips((d, h, parts) in datum()) {
        match solve_source_genus(h, d, &parts) {
            Ok(g) => {
                let b = BranchDatum::new(Some(g), h, d, parts.clone());
                prop_assert!(b.is_compatible().unwrap());
                let m_tilde: u32 = parts.iter().map(|p| p.len() as u32).sum();
                prop_assert_eq!((parts.len() as u32 * d - m_tilde) % 2, 0);
                prop_assert_eq!(Some(g), source_genus_by_ramification(h, d, &parts));
            }
            Err(HurwitzError::ParityViolation(_)) | Err(HurwitzError::Negative(_)) => {
                for g in 0..40 {
                    let b = BranchDatum::new(Some(g), h, d, parts.clone());
                    prop_assert!(!b.is_compatible().unwrap());
                }
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn total_ramification_formula(d in 2u32..30, m in 0u32..8, h in 0u32..4) {
        let parts = vec![vec![d]; m as usize];
        let solved = solve_source_genus(h, d, &parts);
        let twice = i64::from(d) * (2 * i64::from(h) - 2) + i64::from(m) * (i64::from(d) - 1) + 2;
        if twice >= 0 && twice % 2 == 0 {
            prop_assert_eq!(solved.unwrap(), (twice / 2) as u32);
        } else {
            prop_assert!(solved.is_err());
        }
    }
}
