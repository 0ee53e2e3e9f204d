use proptest::prelude::*;

use qzero::cli::{parse_expr, parse_expr_in};
use qzero::qfield::{qint, CycNum, FieldCtx};
use qzero::zmodes::{confluent_on, AlgElement, Chirality, Gen};

fn field() -> &'static FieldCtx {
    FieldCtx::get(3, 4)
}

fn cyc() -> impl Strategy<Value = CycNum> {
    let ctx = field();
    prop::collection::vec((-3i64..=3, 0i64..ctx.order() as i64), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(ctx.zero(), |acc, (c, k)| &acc + &(&ctx.int(c) * &ctx.z_pow(k)))
    })
}

/// Printable expressions in the left sector at n = 3.
fn expr_text() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        (1usize..=3, 1usize..=3).prop_map(|(i, a)| format!("a[{i},{a}]")),
        (1usize..=3).prop_map(|j| format!("qp[{j}]")),
        (1usize..=3, 1i64..=2).prop_map(|(j, e)| format!("qp[{j}]^-{e}")),
        (0i64..=5).prop_map(|c| c.to_string()),
        Just("z".to_string()),
        (1i64..=4).prop_map(|k| format!("(1/{k}*z^{k})")),
    ];
    let term = prop::collection::vec(atom, 1..4).prop_map(|v| v.join("*"));
    (prop::collection::vec((term, any::<bool>()), 1..4)).prop_map(|ts| {
        let mut s = String::new();
        for (k, (t, neg)) in ts.into_iter().enumerate() {
            if k > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            s.push_str(&t);
        }
        s
    })
}

fn word(max: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec((1usize..=3, 1usize..=3).prop_map(|(i, a)| Gen::new(i, a)), 1..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        if let Some(ai) = a.inv() {
            prop_assert!((&a * &ai).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn field_text_round_trip(a in cyc()) {
        prop_assert_eq!(CycNum::parse(field(), &a.to_string()).unwrap(), a);
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in cyc(), b in cyc()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn printed_expressions_reparse(text in expr_text()) {
        let ctx = field();
        let e = parse_expr(ctx, &text).unwrap();
        let back = parse_expr_in(ctx, &e.to_string(), e.chirality()).unwrap();
        prop_assert_eq!(&back, &e);
    }

    #[test]
    fn normal_form_is_idempotent_and_reparses(w in word(3)) {
        let ctx = field();
        let nf = AlgElement::word(ctx, Chirality::Left, w).normal_form();
        prop_assert!(nf.is_normal());
        prop_assert_eq!(nf.normal_form(), nf.clone());
        let back = parse_expr(ctx, &nf.to_string()).unwrap();
        prop_assert_eq!(back, nf);
    }

    #[test]
    fn rewrite_orders_agree(w in word(3), right in any::<bool>()) {
        let chir = if right { Chirality::Right } else { Chirality::Left };
        prop_assert!(confluent_on(field(), chir, &w));
    }
}

#[test]
fn q_integers_vanish_at_the_height() {
    for h in 3..=8u32 {
        let ctx = FieldCtx::get(2, h);
        assert!(qint(ctx, h as i64).is_zero());
        assert!((1..h as i64).all(|m| !qint(ctx, m).is_zero()));
    }
}
