//! Enumeration caps for the brute-force procedures.

use crate::error::{Error, Result};

/// Limits on exponential enumerations. Exceeding one yields
/// [`Error::CapExceeded`] with the required count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of flattened affine pieces.
    pub flatten: usize,
    /// Maximum number of (h-piece, g-piece) products or candidate pairs in a
    /// brute-force subdifferential call.
    pub brute: usize,
    /// Maximum number of Boolean variables for truth-table enumeration.
    pub sat_vars: usize,
    /// Maximum number of zonotope generators for sign enumeration.
    pub zonotope_generators: usize,
    /// Maximum number of subsets examined by the general-position test.
    pub subsets: usize,
    /// Maximum number of intermediate vertices in subdifferential enumeration.
    pub vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            flatten: 20_000,
            brute: 50_000,
            sat_vars: 20,
            zonotope_generators: 16,
            subsets: 200_000,
            vertices: 50_000,
        }
    }
}

impl Caps {
    /// Parses overrides such as `"flatten=100,brute=500"` on top of the defaults.
    pub fn parse(spec: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap override {item:?} is not key=value")))?;
            let n: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cap value {value:?} is not an integer")))?;
            match key.trim() {
                "flatten" => caps.flatten = n,
                "brute" => caps.brute = n,
                "sat_vars" | "sat" => caps.sat_vars = n,
                "zonotope_generators" | "zonotope" => caps.zonotope_generators = n,
                "subsets" => caps.subsets = n,
                "vertices" => caps.vertices = n,
                other => return Err(Error::Parse(format!("unknown cap {other:?}"))),
            }
        }
        Ok(caps)
    }

    /// Reads `PASTAT_CAPS` when set, otherwise returns the defaults.
    pub fn from_env() -> Result<Caps> {
        match std::env::var("PASTAT_CAPS") {
            Ok(s) => Caps::parse(&s),
            Err(_) => Ok(Caps::default()),
        }
    }

    /// Fails with [`Error::CapExceeded`] when `required > cap`.
    pub fn check(what: &'static str, required: u128, cap: usize) -> Result<()> {
        if required > cap as u128 {
            Err(Error::CapExceeded {
                what,
                required: required.to_string(),
                cap,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_apply_on_top_of_defaults() {
        let c = Caps::parse("flatten=10, brute=7").unwrap();
        assert_eq!(c.flatten, 10);
        assert_eq!(c.brute, 7);
        assert_eq!(c.sat_vars, 20);
        assert!(Caps::parse("nope=1").is_err());
        assert!(Caps::parse("flatten").is_err());
    }
}
