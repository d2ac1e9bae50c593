#![no_main]

use std::sync::OnceLock;

use dualext::algebra::AlgebraDump;
use dualext::quiver::double_quiver;
use dualext::{parse_quiver, FiniteDimAlgebra, Quiver};
use libfuzzer_sys::fuzz_target;

fn doubled() -> &'static Quiver {
    static Q: OnceLock<Quiver> = OnceLock::new();
    Q.get_or_init(|| double_quiver(&parse_quiver(dualext::corpus::TWO_ARROWS).unwrap()).unwrap())
}

fuzz_target!(|data: &[u8]| {
    let Ok(dump) = serde_json::from_slice::<AlgebraDump>(data) else { return };
    if let Ok(alg) = FiniteDimAlgebra::from_dump(&dump, doubled().clone()) {
        if alg.dim() <= 24 {
            let _ = alg.check_associativity();
        }
    }
});
