use crate::error::{Error, Result};

/// Largest bound the sieve accepts.
pub const SIEVE_CAP: u64 = 100_000_000;

/// `is_prime[i]` for `0 ≤ i ≤ bound`.
pub fn sieve(bound: u64) -> Result<Vec<bool>> {
    if bound > SIEVE_CAP {
        return Err(Error::SieveCapExceeded {
            bound,
            cap: SIEVE_CAP,
        });
    }
    let n = bound as usize;
    let mut p = vec![true; n + 1];
    p[0] = false;
    if n >= 1 {
        p[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if p[i] {
            let mut j = i * i;
            while j <= n {
                p[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    Ok(p)
}

pub fn primes_up_to(bound: u64) -> Result<Vec<u64>> {
    Ok(sieve(bound)?
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect())
}
