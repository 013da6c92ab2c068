//! Condition and action identity.
//!
//! Names are compared after trimming and case-folding; the written form is
//! kept for display and output files.

/// Canonical key for a condition or action name.
pub fn normalize(name: &str) -> String {
    name.trim().to_lowercase()
}

/// Whether two names denote the same condition or action.
pub fn same(a: &str, b: &str) -> bool {
    normalize(a) == normalize(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_and_whitespace_fold() {
        assert!(same(" Has sword", "has sword "));
        assert!(!same("Has sword", "Has swords"));
        assert_eq!(normalize("  Is Close To Cow "), "is close to cow");
    }
}
