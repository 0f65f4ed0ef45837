use fibrato::bounds::{
    castelnuovo_holds, check_partial_sums, hn_chi, minimal_m, nonhyp_slope, nonhyp_speed,
    optimize_base_change, table, xiao_lower_bound, HnProfile,
};
use fibrato::rational::{int, ratio, Rational};
use proptest::prelude::*;

#[test]
fn table_cells_at_three_decimals() {
    let expected: [&[&[&str]]; 3] = [
        &[
            &[
                "1.889", "2.833", "3.778", "4.722", "5.667", "6.611", "7.556",
            ],
            &[
                "1.944", "2.917", "3.889", "4.861", "5.833", "6.806", "7.778",
            ],
        ],
        &[&[
            "2.667", "3.5", "4", "5.778", "6.667", "7.556", "8.444", "9.333", "10.222",
        ]],
        &[&["1.6", "2.667", "3.2", "4", "4.286", "5", "6", "7"]],
    ];
    for (i, rows) in expected.iter().enumerate() {
        let t = table(i as u8 + 1).unwrap();
        let got = t.decimal_rows();
        let want: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect();
        assert_eq!(got, want, "table {}", i + 1);
    }
    assert!(table(4).is_none());
}

#[test]
fn nonhyp_speed_piecewise() {
    for g in 3..=200u32 {
        let gi = i64::from(g);
        let want = match g {
            3 => ratio(8, 3),
            4 => ratio(7, 2),
            5 => int(4),
            6..=12 => ratio(8 * gi + 4, 9),
            _ => int(gi - 1),
        };
        assert_eq!(nonhyp_speed(g).unwrap(), want, "g = {g}");
        assert_eq!(
            nonhyp_speed(g).unwrap(),
            int(2 * (2 * gi - 2)) / nonhyp_slope(g).unwrap()
        );
    }
}

#[test]
fn trivial_xiao_sequence() {
    let p = HnProfile {
        ranks: vec![1, 2, 5],
        slopes: vec![int(7), int(3), ratio(1, 2)],
        degrees: Some(vec![0, 3, 8]),
    };
    let g = 5;
    assert_eq!(
        xiao_lower_bound(&p, &[1, 3]).unwrap(),
        int(2 * g - 2) * (int(7) + ratio(1, 2))
    );
}

#[test]
fn invalid_profiles_are_rejected() {
    let bad = [
        HnProfile {
            ranks: vec![2, 1],
            slopes: vec![int(2), int(1)],
            degrees: None,
        },
        HnProfile {
            ranks: vec![1, 2],
            slopes: vec![int(1), int(2)],
            degrees: None,
        },
        HnProfile {
            ranks: vec![1, 2],
            slopes: vec![int(1), int(-1)],
            degrees: None,
        },
        HnProfile {
            ranks: vec![1, 2],
            slopes: vec![int(2), int(1)],
            degrees: Some(vec![0, 1]),
        },
    ];
    for p in bad {
        assert!(hn_chi(&p).is_err(), "{p:?}");
    }
}

fn profile() -> impl Strategy<Value = HnProfile> {
    prop::collection::btree_set(1u32..12, 1..5).prop_flat_map(|ranks| {
        let n = ranks.len();
        (
            Just(ranks.into_iter().collect::<Vec<_>>()),
            prop::collection::btree_set((0i64..60, 1i64..5), n..=n),
        )
            .prop_filter_map("distinct slopes", |(ranks, raw)| {
                let mut slopes: Vec<Rational> = raw.iter().map(|(p, q)| ratio(*p, *q)).collect();
                slopes.sort();
                slopes.dedup();
                slopes.reverse();
                (slopes.len() == ranks.len()).then_some(HnProfile {
                    ranks,
                    slopes,
                    degrees: None,
                })
            })
    })
}

proptest! {
    #[test]
    fn castelnuovo_implies_degree_at_least_twice_rank(g in 3u32..40, r in 2u32..40, d in 1u32..90) {
        prop_assume!(r < g);
        if castelnuovo_holds(d, r, g).unwrap() {
            prop_assert!(d >= 2 * r);
        }
    }

    #[test]
    fn base_change_optimum_is_nine(g in 2u32..80, m in 1u32..8) {
        let opt = optimize_base_change(g, m).unwrap();
        prop_assert_eq!(opt.n, 9);
        prop_assert_eq!(opt.bound, int(i64::from(g)) * (int(1) - ratio(1, 18 * i64::from(m))));
    }

    #[test]
    fn minimal_m_is_minimal(g_c in 0u32..10, s in 1u32..20) {
        prop_assume!(2 * g_c + s > 2);
        let m = minimal_m(g_c, s).unwrap();
        let share = ratio(i64::from(s), i64::from(2 * g_c + s - 2));
        prop_assert!(share >= ratio(1, i64::from(m)));
        if m > 1 {
            prop_assert!(share < ratio(1, i64::from(m - 1)));
        }
    }

    #[test]
    fn polygon_ends_at_hodge_degree(p in profile(), g_c in 0u32..3, s in 3u32..8) {
        let base = int(i64::from(2 * g_c + s) - 2);
        let last = int(2) * hn_chi(&p).unwrap() / &base;
        let mut claimed: Vec<Rational> = vec![int(1000); p.ranks.len()];
        *claimed.last_mut().unwrap() = last.clone();
        let checks = check_partial_sums(&p, g_c, s, &claimed).unwrap();
        prop_assert!(checks.iter().all(|c| c.ok));
        prop_assert_eq!(&checks.last().unwrap().polygon, &last);
    }

    #[test]
    fn hodge_degree_is_nonnegative(p in profile()) {
        prop_assert!(hn_chi(&p).unwrap() >= int(0));
    }
}
