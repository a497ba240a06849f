//! Symbol-to-sector assignments.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// Name of the catch-all group that absorbs sectors with a single member
/// (and symbols with no assignment at all).
pub const CATCH_ALL_SECTOR: &str = "other";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SectorTaxonomy {
    assignments: BTreeMap<String, String>,
}

impl SectorTaxonomy {
    pub fn new(assignments: BTreeMap<String, String>) -> Self {
        SectorTaxonomy { assignments }
    }

    pub fn assign(&mut self, symbol: &str, sector: &str) {
        self.assignments.insert(symbol.to_owned(), sector.to_owned());
    }

    pub fn sector_of(&self, symbol: &str) -> Option<&str> {
        self.assignments.get(symbol).map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.assignments.iter().map(|(s, g)| (s.as_str(), g.as_str()))
    }

    /// Sectors present among `symbols`, as sorted member-index lists.
    /// Single-member sectors and unassigned symbols are folded into
    /// [`CATCH_ALL_SECTOR`], so every returned group is meaningful for
    /// group-level statistics.
    pub fn effective_groups(&self, symbols: &[String]) -> BTreeMap<String, Vec<usize>> {
        let mut raw: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (i, sym) in symbols.iter().enumerate() {
            let sector = self.sector_of(sym).unwrap_or(CATCH_ALL_SECTOR);
            raw.entry(sector).or_default().push(i);
        }
        let mut out: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (sector, members) in raw {
            let key = if members.len() == 1 && sector != CATCH_ALL_SECTOR {
                CATCH_ALL_SECTOR
            } else {
                sector
            };
            out.entry(key.to_owned()).or_default().extend(members);
        }
        for members in out.values_mut() {
            members.sort_unstable();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn tax(pairs: &[(&str, &str)]) -> SectorTaxonomy {
        SectorTaxonomy::new(
            pairs.iter().map(|(s, g)| (s.to_string(), g.to_string())).collect(),
        )
    }

    #[test]
    fn groups_by_sector_with_singletons_folded() {
        let t = tax(&[
            ("AAA", "exchange"),
            ("BBB", "exchange"),
            ("CCC", "lending"),
            ("DDD", "lending"),
            ("EEE", "iot"), // singleton -> other
        ]);
        let symbols: Vec<String> =
            ["AAA", "BBB", "CCC", "DDD", "EEE", "FFF"].iter().map(|s| s.to_string()).collect();
        let groups = t.effective_groups(&symbols);
        assert_eq!(groups["exchange"], vec![0, 1]);
        assert_eq!(groups["lending"], vec![2, 3]);
        // EEE's singleton sector and the unassigned FFF both land in "other"
        assert_eq!(groups[CATCH_ALL_SECTOR], vec![4, 5]);
        assert_eq!(groups.len(), 3);
    }

    #[test]
    fn groups_depend_on_the_symbol_universe() {
        let t = tax(&[("AAA", "exchange"), ("BBB", "exchange")]);
        // only one exchange member present -> folded
        let symbols = vec!["AAA".to_string(), "ZZZ".to_string()];
        let groups = t.effective_groups(&symbols);
        assert!(!groups.contains_key("exchange"));
        assert_eq!(groups[CATCH_ALL_SECTOR], vec![0, 1]);
    }
}
