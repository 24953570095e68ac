mod common;

use proptest::prelude::*;

use s3lite::dispatch::resolve_method;
use s3lite::env::Env;
use s3lite::parser::parse_source;
use s3lite::pretty::pretty_program;
use s3lite::summary::quantile_type7;
use s3lite::value::Value;
use s3lite::Session;

proptest! {
    /// Printing a generated program and reparsing it yields the same
    /// tree.
    #[test]
    fn parser_round_trip(prog in common::program()) {
        let printed = pretty_program(&prog);
        let reparsed = parse_source(&printed)
            .unwrap_or_else(|e| panic!("reparse failed: {e:?}\nsource:\n{printed}"));
        prop_assert_eq!(&prog, &reparsed, "round trip changed structure:\n{}", printed);
    }

    /// The chosen method is always the first candidate in the tried
    /// list that names a bound function, and the candidate order is the
    /// class vector followed by default.
    #[test]
    fn dispatch_candidate_order(
        classes in proptest::collection::vec("[a-c]", 1..4),
        bound in proptest::collection::vec(("[a-c]|default", any::<bool>()), 0..5),
    ) {
        let env = Env::global();
        for (class, as_function) in &bound {
            let name = format!("g.{class}");
            let value = if *as_function {
                Value::builtin("sum")
            } else {
                Value::num(1.0)
            };
            env.define(&name, value);
        }
        let outcome = resolve_method("g", &classes, &env);

        let mut expected: Vec<String> = classes.iter().map(|c| format!("g.{c}")).collect();
        expected.push("g.default".to_string());
        let first_hit = expected.iter().position(|m| {
            matches!(env.lookup_value(m), Some(v) if v.is_function())
        });
        match first_hit {
            Some(i) => {
                prop_assert_eq!(outcome.chosen.as_deref(), Some(expected[i].as_str()));
                prop_assert_eq!(&outcome.tried, &expected[..=i]);
            }
            None => {
                prop_assert!(outcome.chosen.is_none());
                prop_assert_eq!(&outcome.tried, &expected);
            }
        }
    }

    /// Quantiles stay within the sample range, hit the extremes at
    /// p = 0 and p = 1, and are monotone in p.
    #[test]
    fn quantile_bounds_and_monotonicity(
        mut xs in proptest::collection::vec(-1e6f64..1e6, 1..40),
        p in 0.0f64..=1.0,
        q in 0.0f64..=1.0,
    ) {
        let lo = quantile_type7(&xs, 0.0).unwrap();
        let hi = quantile_type7(&xs, 1.0).unwrap();
        xs.sort_by(f64::total_cmp);
        prop_assert_eq!(lo, xs[0]);
        prop_assert_eq!(hi, xs[xs.len() - 1]);

        let qp = quantile_type7(&xs, p).unwrap();
        prop_assert!(qp >= lo && qp <= hi, "q({p}) = {qp} outside [{lo}, {hi}]");

        let (small, large) = if p <= q { (p, q) } else { (q, p) };
        prop_assert!(
            quantile_type7(&xs, small).unwrap() <= quantile_type7(&xs, large).unwrap()
        );
    }

    /// Assignment copies: mutating any copy through class, attr, or
    /// field replacement never changes the original.
    #[test]
    fn copy_semantics_probe(n in 1u8..20) {
        let mut s = Session::bare();
        let src = format!(
            "orig <- 1:{n}
             copy1 <- orig
             copy2 <- orig
             class(copy1) <- \"tagged\"
             attr(copy2, \"note\") <- \"x\"
             rec <- make_fixtures()
             rec2 <- rec
             rec2$gbm$residuals <- numeric(0)
             all.equal(orig, 1:{n})"
        );
        let v = s.eval_str(&src).unwrap();
        prop_assert_eq!(s3lite::printer::format_value(&v), "[1] TRUE");
        let same = s
            .eval_str("all.equal(rec$gbm$residuals, make_fixtures()$gbm$residuals)")
            .unwrap();
        prop_assert_eq!(s3lite::printer::format_value(&same), "[1] TRUE");
    }
}
