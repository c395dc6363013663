use super::InvertError;
use crate::polymap::PolynomialMap;

/// `(deg F)^(n-1)`, the largest possible degree of `F^{-1}`. Saturates at
/// `u64::MAX`.
pub fn max_inverse_degree(f: &PolynomialMap) -> Result<u64, InvertError> {
    let degree = f.degree().filter(|&d| d >= 1).ok_or(InvertError::ConstantMap)?;
    let exp = u32::try_from(f.dimension() - 1).unwrap_or(u32::MAX);
    Ok(u64::from(degree).checked_pow(exp).unwrap_or(u64::MAX))
}

/// Number of steps after which `P_m^i` must vanish when `deg G_i <= target_degree`.
///
/// General `Id + H` with minimal lower degree `d >= 2`: the smallest `m`
/// with `m > (D*N - d)/(d - 1) + 1`. For cubic homogeneous `H` the bound
/// `m > (3N - 1)/2` also applies and the smaller of the two is returned.
/// `H = 0` gives 1, because `P_1 = 0` immediately.
pub fn iteration_cap(f: &PolynomialMap, target_degree: u64) -> Result<usize, InvertError> {
    let dec = f.decompose()?;
    let Some(d) = dec.min_lower_degree else {
        return Ok(1);
    };
    let n_deg = u128::from(target_degree.max(1));
    let big_d = u128::from(f.degree().ok_or(InvertError::ConstantMap)?);
    let d = u128::from(d);
    // floor(x) + 1 is the smallest integer strictly above x.
    let general = (big_d * n_deg - d) / (d - 1) + 2;
    let cap = if dec.is_cubic_homogeneous() {
        general.min((3 * n_deg - 1) / 2 + 1)
    } else {
        general
    };
    Ok(usize::try_from(cap).unwrap_or(usize::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Polynomial;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn planar() -> PolynomialMap {
        let inner = &x(2, 1) + &x(2, 0).pow(3);
        PolynomialMap::new(vec![&x(2, 0) + &inner.pow(2), inner]).unwrap()
    }

    fn cubic(n: usize) -> PolynomialMap {
        let mut comps: Vec<Polynomial> = (0..n).map(|i| x(n, i)).collect();
        comps[0] = &x(n, 0) + &x(n, 1).pow(3);
        PolynomialMap::new(comps).unwrap()
    }

    #[test]
    fn inverse_degree_bound() {
        assert_eq!(max_inverse_degree(&planar()).unwrap(), 6);
        assert_eq!(max_inverse_degree(&PolynomialMap::identity(4)).unwrap(), 1);
        assert_eq!(max_inverse_degree(&cubic(6)).unwrap(), 243);
        let constant = PolynomialMap::new(vec![Polynomial::one(2), Polynomial::zero(2)]).unwrap();
        assert_eq!(max_inverse_degree(&constant), Err(InvertError::ConstantMap));
    }

    #[test]
    fn caps() {
        // cubic homogeneous, N = 3: smallest m > 4
        assert_eq!(iteration_cap(&cubic(2), 3).unwrap(), 5);
        assert_eq!(iteration_cap(&PolynomialMap::identity(3), 10).unwrap(), 1);
        // D = 6, d = 2, N = 6: smallest m > 35
        assert_eq!(iteration_cap(&planar(), 6).unwrap(), 36);
    }
}
