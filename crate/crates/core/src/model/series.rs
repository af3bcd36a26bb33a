use std::collections::btree_map::{self, BTreeMap};

use crate::error::{Error, Result};

/// Values keyed by calendar year, iterated in ascending year order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YearSeries<T> {
    entries: BTreeMap<i32, T>,
}

impl<T> Default for YearSeries<T> {
    fn default() -> Self {
        YearSeries {
            entries: BTreeMap::new(),
        }
    }
}

impl<T> YearSeries<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a value; a year may appear only once.
    pub fn insert(&mut self, year: i32, value: T) -> Result<()> {
        match self.entries.entry(year) {
            btree_map::Entry::Occupied(_) => Err(Error::DuplicateYear(year)),
            btree_map::Entry::Vacant(slot) => {
                slot.insert(value);
                Ok(())
            }
        }
    }

    pub fn get(&self, year: i32) -> Option<&T> {
        self.entries.get(&year)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn years(&self) -> impl Iterator<Item = i32> + '_ {
        self.entries.keys().copied()
    }

    pub fn values(&self) -> impl Iterator<Item = &T> + '_ {
        self.entries.values()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &T)> + '_ {
        self.entries.iter().map(|(&y, v)| (y, v))
    }

    pub fn first_year(&self) -> Option<i32> {
        self.entries.keys().next().copied()
    }

    pub fn last_year(&self) -> Option<i32> {
        self.entries.keys().next_back().copied()
    }

    /// Keeps only the years inside `first..=last`.
    pub fn retain_years(&mut self, first: i32, last: i32) {
        self.entries.retain(|&y, _| (first..=last).contains(&y));
    }

    pub fn map<U>(&self, mut f: impl FnMut(i32, &T) -> U) -> YearSeries<U> {
        YearSeries {
            entries: self.entries.iter().map(|(&y, v)| (y, f(y, v))).collect(),
        }
    }

    pub fn try_map<U>(&self, mut f: impl FnMut(i32, &T) -> Result<U>) -> Result<YearSeries<U>> {
        let mut entries = BTreeMap::new();
        for (&y, v) in &self.entries {
            entries.insert(y, f(y, v)?);
        }
        Ok(YearSeries { entries })
    }
}

impl<T> IntoIterator for YearSeries<T> {
    type Item = (i32, T);
    type IntoIter = btree_map::IntoIter<i32, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.into_iter()
    }
}
