macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        #[path = $file]
        mod $name;

        #[test]
        fn $name() {
            $name::run_example().unwrap();
        }
    };
}

example!(exact_core, "../examples/exact_core.rs");
example!(simple_lie, "../examples/simple_lie.rs");
example!(hamiltonian_bracket, "../examples/hamiltonian_bracket.rs");
example!(quotient_dimensions, "../examples/quotient_dimensions.rs");
example!(triangular_closure, "../examples/triangular_closure.rs");
example!(invariant_form, "../examples/invariant_form.rs");
example!(weyl_orbit, "../examples/weyl_orbit.rs");
example!(automorphism_shear, "../examples/automorphism_shear.rs");
example!(jet_calibration, "../examples/jet_calibration.rs");
example!(evaluation_module, "../examples/evaluation_module.rs");
example!(realization_module, "../examples/realization_module.rs");
example!(induced_module, "../examples/induced_module.rs");
example!(lambda_family, "../examples/lambda_family.rs");
example!(construct_k, "../examples/construct_k.rs");
example!(cli_run, "../examples/cli_run.rs");
