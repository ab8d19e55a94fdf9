//! Argument value parsers.

use slant_core::orbits::AxisSpec;
use slant_core::ImOctonion;

/// `e1`..`e7`, optionally signed (`-e4`), or seven comma-separated reals.
pub fn vector(s: &str) -> Result<ImOctonion, String> {
    let t = s.trim();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) if rest.starts_with('e') => (-1.0, rest),
        _ => (1.0, t.strip_prefix('+').unwrap_or(t)),
    };
    if let Some(idx) = body.strip_prefix('e') {
        return match idx.parse::<usize>() {
            Ok(i @ 1..=7) => Ok(sign * ImOctonion::basis(i)),
            _ => Err(format!("`{s}`: basis vectors are e1 .. e7")),
        };
    }
    let parts: Vec<&str> = t.split(',').collect();
    if parts.len() != 7 {
        return Err(format!("`{s}`: expected 7 comma-separated coordinates, got {}", parts.len()));
    }
    let mut c = [0.0f64; 7];
    for (slot, p) in c.iter_mut().zip(parts) {
        *slot = p.trim().parse().map_err(|_| format!("`{p}` is not a number"))?;
        if !slot.is_finite() {
            return Err(format!("`{p}` is not finite"));
        }
    }
    Ok(ImOctonion::from_coords(c))
}

/// `LO:HI:N` (N ≥ 2 nodes, closed-open) or a comma list of values.
pub fn axis(s: &str) -> Result<AxisSpec, String> {
    let num = |p: &str| p.trim().parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| format!("`{p}` is not a number"));
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [lo, hi, n] => {
            let n: usize = n.trim().parse().map_err(|_| format!("`{n}` is not a node count"))?;
            if n < 2 {
                return Err(format!("`{s}`: grid resolution must be at least 2"));
            }
            Ok(AxisSpec::Lattice { lo: num(lo)?, hi: num(hi)?, n })
        }
        [list] => {
            let v = list.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
            Ok(AxisSpec::Values(v))
        }
        _ => Err(format!("`{s}`: expected LO:HI:N or a comma list")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectors() {
        assert_eq!(vector("e3").unwrap(), ImOctonion::basis(3));
        assert_eq!(vector("-e4").unwrap(), -ImOctonion::basis(4));
        assert_eq!(vector("0,1,0,0,0,0,0").unwrap(), ImOctonion::basis(2));
        assert!(vector("e8").is_err());
        assert!(vector("1,2").is_err());
        assert!(vector("1,x,0,0,0,0,0").is_err());
    }

    #[test]
    fn axes() {
        assert_eq!(axis("0:1:4").unwrap(), AxisSpec::Lattice { lo: 0.0, hi: 1.0, n: 4 });
        assert_eq!(axis("0").unwrap(), AxisSpec::Values(vec![0.0]));
        assert_eq!(axis("-1,0.5").unwrap(), AxisSpec::Values(vec![-1.0, 0.5]));
        assert!(axis("0:1:1").is_err());
        assert!(axis("0:1").is_err());
    }
}
