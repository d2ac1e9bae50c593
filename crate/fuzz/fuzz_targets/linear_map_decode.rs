#![no_main]

use std::sync::OnceLock;

use dualext::dual::{build_dual_extension, DualExtensionAlgebra};
use dualext::parse_quiver;
use dualext::spaces::{is_lie_derivation, LinearMap, LinearMapFile};
use libfuzzer_sys::fuzz_target;

fn algebra() -> &'static DualExtensionAlgebra {
    static ALG: OnceLock<DualExtensionAlgebra> = OnceLock::new();
    ALG.get_or_init(|| {
        let q = parse_quiver(dualext::corpus::CHAIN).unwrap();
        build_dual_extension(&q).unwrap()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(file) = serde_json::from_slice::<LinearMapFile>(data) else { return };
    let alg = &algebra().algebra;
    if let Ok(m) = LinearMap::from_file(&file, alg) {
        assert_eq!(m.dim(), alg.dim());
        let _ = is_lie_derivation(alg, &m);
    }
});
