//! Frozen oracle values: selected entries of the quantum left and right
//! matrices at n = 4, and the full quantum left matrix at n = 2, written out
//! term by term as Weyl-ordered monomials and compared exactly.

mod common;

#[test]
fn quantum_left_matrix_n2() {
    common::check_frozen_left_n2();
}

#[test]
fn quantum_left_matrix_entries_n4() {
    common::check_frozen_left_entries_n4();
}

#[test]
fn quantum_right_matrix_entries_n4() {
    common::check_frozen_right_entries_n4();
}
