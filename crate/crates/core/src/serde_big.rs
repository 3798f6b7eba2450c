//! Big integers travel through JSON as decimal strings.

use num_bigint::BigUint;
use serde::Serializer;

pub fn biguint<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}
