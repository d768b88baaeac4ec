//! Every cargo example, run as a test.

macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(sieve_cache, "sieve_cache.rs");
example!(goldbach_scan, "goldbach_scan.rs");
example!(verify_families, "verify_families.rs");
example!(classify, "classify.rs");
example!(propagate, "propagate.rs");
example!(goldbach_induction, "goldbach_induction.rs");
example!(spiro_set, "spiro_set.rs");
example!(h_induction, "h_induction.rs");
example!(branch_replay, "branch_replay.rs");
example!(run_report, "run_report.rs");
