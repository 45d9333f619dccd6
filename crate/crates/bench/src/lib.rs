//! Shared fixtures for the criterion benchmarks.

use msdecomp_core::{GeneratedInstance, InstanceSpec, generate_nth};

/// First instance of the given spec; deterministic, so benchmarks always
/// measure the same input.
pub fn fixture(structure: &[u64], range: u64, seed: u64) -> GeneratedInstance {
    let spec = InstanceSpec::new(structure.to_vec(), range, seed).expect("valid fixture spec");
    generate_nth(&spec, 0).expect("fixture generation succeeds")
}

/// The 25-element instance with four-digit elements used as the standing
/// example of magnitude-independence.
pub fn large_value_instance() -> msdecomp_core::Multiset {
    msdecomp_core::Multiset::from_elements([
        0, 1249, 1705, 2250, 2267, 2954, 3499, 3516, 4270, 4324, 4390, 4852, 5639, 5975, 6029,
        6520, 6537, 6557, 6574, 6591, 7102, 7119, 8660, 8714, 9242,
    ])
    .expect("non-empty")
}
