/// Expected dimension `2 c1(A) + (dim X - 6)(1 - g) + 2k - sum dim(gamma_i)`
/// of the constrained moduli space; only `iota = 0` coefficients are
/// meaningful. Insertion dimensions are assumed `>= 2`.
pub fn expected_dimension(c1: i64, dim_x: u32, genus: u32, insertion_dims: &[u32]) -> i64 {
    let k = insertion_dims.len() as i64;
    let dims: i64 = insertion_dims.iter().map(|&d| d as i64).sum();
    2 * c1 + (dim_x as i64 - 6) * (1 - genus as i64) + 2 * k - dims
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        for g in 0..5 {
            assert_eq!(expected_dimension(0, 6, g, &[]), 0);
        }
        assert_eq!(expected_dimension(1, 6, 0, &[4]), 0);
        assert_eq!(expected_dimension(0, 8, 0, &[2, 2]), 2);
    }
}
