use std::collections::HashSet;

/// Generates variable names `<stem>1`, `<stem>2`, ... skipping reserved names.
///
/// One generator is threaded through everything built for a single proof
/// obligation so numbering is global and deterministic.
#[derive(Clone, Debug)]
pub struct FreshVars {
    stem: String,
    next: usize,
    reserved: HashSet<String>,
}

impl FreshVars {
    pub fn new(stem: impl Into<String>) -> Self {
        FreshVars {
            stem: stem.into(),
            next: 1,
            reserved: HashSet::new(),
        }
    }

    pub fn reserve<I, S>(&mut self, names: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.reserved.extend(names.into_iter().map(Into::into));
    }

    pub fn fresh(&mut self) -> String {
        loop {
            let name = format!("{}{}", self.stem, self.next);
            self.next += 1;
            if self.reserved.insert(name.clone()) {
                return name;
            }
        }
    }

    pub fn fresh_many(&mut self, count: usize) -> Vec<String> {
        (0..count).map(|_| self.fresh()).collect()
    }
}

impl Default for FreshVars {
    fn default() -> Self {
        FreshVars::new("x")
    }
}
