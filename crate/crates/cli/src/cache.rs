//! One versioned JSON file per table. Anything unreadable or stale is
//! recomputed and overwritten, never migrated.

use std::fs;
use std::path::{Path, PathBuf};

use e10_core::borcherds::{PetersonMemo, PETERSON_MEMO_VERSION};
use e10_core::qseries::{CoeffTable, TABLE_VERSION};
use e10_core::PowerSeries;

pub struct Cache {
    dir: Option<PathBuf>,
    verbose: bool,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>, verbose: bool) -> Self {
        Cache { dir, verbose }
    }

    fn path(&self, file: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(file))
    }

    fn log(&self, msg: &str) {
        if self.verbose {
            eprintln!("cache: {msg}");
        }
    }

    fn write(&self, path: &Path, body: &str) {
        let res = path.parent().map_or(Ok(()), fs::create_dir_all).and_then(|_| fs::write(path, body));
        match res {
            Ok(()) => self.log(&format!("wrote {}", path.display())),
            Err(e) => eprintln!("warning: could not write {}: {e}", path.display()),
        }
    }

    pub fn series_file(name: &str, prec: i64) -> String {
        format!("qexp-{name}-p{prec}-v{TABLE_VERSION}.json")
    }

    /// A cached series if present and current, else `compute()` stored back.
    pub fn series(&self, name: &str, prec: i64, compute: impl FnOnce() -> e10_core::Result<PowerSeries>) -> e10_core::Result<PowerSeries> {
        let Some(path) = self.path(&Self::series_file(name, prec)) else {
            return compute();
        };
        if let Ok(body) = fs::read_to_string(&path) {
            match CoeffTable::from_json(&body).and_then(|t| t.to_series().map(|s| (t, s))) {
                Ok((t, s)) if t.name == name && t.prec == prec => {
                    self.log(&format!("hit {}", path.display()));
                    return Ok(s);
                }
                _ => self.log(&format!("stale {}", path.display())),
            }
        }
        let s = compute()?;
        self.write(&path, &CoeffTable::from_series(name, &s).to_json());
        Ok(s)
    }

    pub fn peterson_file(bound: i64) -> String {
        format!("peterson-h{bound}-v{PETERSON_MEMO_VERSION}.json")
    }

    pub fn load_peterson(&self, bound: i64) -> Option<PetersonMemo> {
        let path = self.path(&Self::peterson_file(bound))?;
        let body = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<PetersonMemo>(&body) {
            Ok(m) if m.version == PETERSON_MEMO_VERSION && m.bound == bound => {
                self.log(&format!("hit {}", path.display()));
                Some(m)
            }
            _ => {
                self.log(&format!("stale {}", path.display()));
                None
            }
        }
    }

    pub fn store_peterson(&self, memo: &PetersonMemo) {
        if let Some(path) = self.path(&Self::peterson_file(memo.bound)) {
            match serde_json::to_string(memo) {
                Ok(body) => self.write(&path, &body),
                Err(e) => eprintln!("warning: could not serialise memo: {e}"),
            }
        }
    }
}
