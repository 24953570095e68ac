//! Method resolution. A method is any function binding named
//! `generic.class`; defining one is registration. Resolution scans the
//! receiver's class vector left to right and falls back to
//! `generic.default`.

use crate::env::Env;
use crate::value::ClassVector;

#[derive(Debug, Clone, PartialEq)]
pub struct DispatchOutcome {
    pub generic: String,
    pub classes: ClassVector,
    /// Candidate method names inspected, truncated after the first hit.
    pub tried: Vec<String>,
    pub chosen: Option<String>,
}

/// Scans `generic.c` for each class in order, then `generic.default`.
/// Bindings that exist but are not functions are skipped. Never errors.
pub fn resolve_method(generic: &str, classes: &[String], env: &Env) -> DispatchOutcome {
    let mut tried = Vec::new();
    let mut chosen = None;
    for candidate in classes
        .iter()
        .map(|c| format!("{generic}.{c}"))
        .chain(std::iter::once(format!("{generic}.default")))
    {
        let hit = env
            .lookup_value(&candidate)
            .is_some_and(|v| v.is_function());
        tried.push(candidate.clone());
        if hit {
            chosen = Some(candidate);
            break;
        }
    }
    DispatchOutcome {
        generic: generic.to_string(),
        classes: classes.to_vec(),
        tried,
        chosen,
    }
}

/// All registered methods of `generic`: function bindings named
/// `generic.<something>`, deduplicated innermost-first, sorted.
pub fn methods_of(generic: &str, env: &Env) -> Vec<String> {
    env.function_names_with_prefix(&format!("{generic}."))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::Value;

    fn rss_env() -> Env {
        let env = Env::global();
        for m in ["rss.rpart", "rss.gbm", "rss.randomForest", "rss.default"] {
            env.define(m, Value::builtin("sum"));
        }
        env
    }

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn class_match_wins() {
        let out = resolve_method("rss", &s(&["randomForest"]), &rss_env());
        assert_eq!(out.chosen.as_deref(), Some("rss.randomForest"));
        assert_eq!(out.tried, vec!["rss.randomForest"]);
    }

    #[test]
    fn unknown_class_falls_back_to_default() {
        let out = resolve_method("rss", &s(&["function"]), &rss_env());
        assert_eq!(out.chosen.as_deref(), Some("rss.default"));
        assert_eq!(out.tried, vec!["rss.function", "rss.default"]);
    }

    #[test]
    fn first_match_scan_over_class_vector() {
        let out = resolve_method("rss", &s(&["a", "gbm"]), &rss_env());
        assert_eq!(out.chosen.as_deref(), Some("rss.gbm"));
        assert_eq!(out.tried, vec!["rss.a", "rss.gbm"]);
    }

    #[test]
    fn nothing_found_leaves_chosen_empty() {
        let env = Env::global();
        let out = resolve_method("rss", &s(&["rpart"]), &env);
        assert_eq!(out.chosen, None);
        assert_eq!(out.tried, vec!["rss.rpart", "rss.default"]);
    }

    #[test]
    fn non_function_binding_is_skipped() {
        let env = rss_env();
        env.define("rss.gbm", Value::num(1.0));
        let out = resolve_method("rss", &s(&["gbm"]), &env);
        assert_eq!(out.chosen.as_deref(), Some("rss.default"));
        assert_eq!(out.tried, vec!["rss.gbm", "rss.default"]);
    }

    #[test]
    fn methods_listing_is_sorted_and_function_only() {
        let env = rss_env();
        env.define("rss", Value::builtin("sum")); // the generic itself: excluded
        env.define("rss.data", Value::num(1.0)); // not a function: excluded
        assert_eq!(
            methods_of("rss", &env),
            vec!["rss.default", "rss.gbm", "rss.randomForest", "rss.rpart"]
        );
        assert!(methods_of("nosuch", &env).is_empty());
    }
}
