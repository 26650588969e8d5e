macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run().expect(concat!(stringify!($name), " example failed"));
        }
    };
}

example!(phase_system);
example!(period_function);
example!(classification_table);
example!(periodic_orbit);
example!(duality);
example!(monge_ampere);
example!(euler_field);
