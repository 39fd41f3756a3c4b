use std::sync::atomic::{AtomicUsize, Ordering};

use k3leech::leech::{contains, for_each_shell6};

#[test]
fn the_norm_six_shell_has_16773120_vectors() {
    let count = AtomicUsize::new(0);
    let bad = AtomicUsize::new(0);
    for_each_shell6(|v| {
        count.fetch_add(1, Ordering::Relaxed);
        if v.sq() != 48 || !contains(v) {
            bad.fetch_add(1, Ordering::Relaxed);
        }
    });
    assert_eq!(count.into_inner(), 16_773_120);
    assert_eq!(bad.into_inner(), 0);
}
