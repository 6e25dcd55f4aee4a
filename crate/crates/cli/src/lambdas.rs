//! λ-list syntax: comma-separated items, each a number or an inclusive
//! `start:stop:step` range.

const MAX_LAMBDAS: usize = 100_000;

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: {:?}", s.trim()))?;
    if !v.is_finite() {
        return Err(format!("not a finite number: {:?}", s.trim()));
    }
    Ok(v)
}

pub fn parse_lambdas(text: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in text.split(',') {
        if item.trim().is_empty() {
            return Err(format!("empty item in lambda list {text:?}"));
        }
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(number(v)?),
            [a, b, c] => {
                let (start, stop, step) = (number(a)?, number(b)?, number(c)?);
                if !(step > 0.0) {
                    return Err(format!("range step must be positive in {:?}", item.trim()));
                }
                if stop < start {
                    return Err(format!("range stop below start in {:?}", item.trim()));
                }
                // stop counts as included when within round-off of a step
                let span = (stop - start) / step;
                let n = (span + 1e-9 * span.max(1.0)).floor() as usize + 1;
                if out.len() + n > MAX_LAMBDAS {
                    return Err(format!("more than {MAX_LAMBDAS} lambdas"));
                }
                out.extend((0..n).map(|k| start + k as f64 * step));
            }
            _ => return Err(format!("expected a number or start:stop:step, got {:?}", item.trim())),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_lambdas("0.5:3:0.5").unwrap(), vec![0.5, 1.0, 1.5, 2.0, 2.5, 3.0]);
        assert_eq!(parse_lambdas("0.1, 0.2,1:3:1").unwrap(), vec![0.1, 0.2, 1.0, 2.0, 3.0]);
        assert_eq!(parse_lambdas("0.1:0.3:0.1").unwrap().len(), 3);
        assert_eq!(parse_lambdas("1:1:0.5").unwrap(), vec![1.0]);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "1,,2", "a", "1:2", "1:2:0", "2:1:0.5", "1:2:3:4", "inf"] {
            assert!(parse_lambdas(bad).is_err(), "{bad}");
        }
    }
}
