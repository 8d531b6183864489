//! Shared inputs for the benchmarks.

/// Left trefoil.
pub const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

/// A 9-crossing alternating knot from the bundled corpus.
pub const K9: &str = "X(3,1,4,18) X(9,2,10,3) X(13,4,14,5) X(11,7,12,6) X(17,9,18,8) \
X(1,10,2,11) X(15,12,16,13) X(5,14,6,15) X(7,17,8,16)";

/// The 14-crossing knot used throughout the acceptance suite.
pub const K14: &str = "X(1,19,2,18) X(19,1,20,28) X(20,13,21,14) X(12,17,13,18) \
X(16,21,17,22) X(5,15,6,14) X(15,5,16,4) X(6,27,7,28) X(2,7,3,8) X(26,3,27,4) \
X(25,23,26,22) X(11,9,12,8) X(23,10,24,11) X(9,24,10,25)";
