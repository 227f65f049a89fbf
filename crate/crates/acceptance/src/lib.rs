//! Acceptance gate for `ammab`. The checks live in `tests/acceptance.rs`:
//! `cargo test -p ammab-acceptance --test acceptance`.
