//! A complete description of one run, with a one-line textual form.

use std::fmt;
use std::str::FromStr;

use riders_core::enumerate::Budget;
use riders_core::{BoardPolygon, MoveSet};

use crate::parse::{parse_board, parse_piece, parse_range, piece_text};
use crate::Error;

/// Environment variable holding the default enumeration budget.
pub const BUDGET_ENV: &str = "RIDERS_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            _ => Err(Error::Usage(format!("unknown format {s:?}; use json, csv or pretty"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "pretty",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub piece: MoveSet,
    pub board: BoardPolygon,
    pub q: u64,
    pub n: (u64, u64),
    pub period: Option<u64>,
    pub format: Format,
    pub budget: Budget,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(piece: MoveSet, q: u64, n: (u64, u64)) -> Self {
        RunConfig {
            piece,
            board: BoardPolygon::square(),
            q,
            n,
            period: None,
            format: Format::Json,
            budget: default_budget(),
            threads: None,
        }
    }
}

/// `RIDERS_BUDGET` if set and valid, else the library default.
pub fn default_budget() -> Budget {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u128>().ok())
        .map_or(Budget::DEFAULT, Budget)
}

/// `piece=queen board=square q=2 n=1:6 format=json budget=10000000000`, plus
/// `period=` and `threads=` when set.
impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "piece={} board={} q={} n={}:{} format={} budget={}",
            piece_text(&self.piece),
            self.board.to_text(),
            self.q,
            self.n.0,
            self.n.1,
            self.format,
            self.budget.0
        )?;
        if let Some(p) = self.period {
            write!(f, " period={p}")?;
        }
        if let Some(t) = self.threads {
            write!(f, " threads={t}")?;
        }
        Ok(())
    }
}

impl FromStr for RunConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut piece = None;
        let mut q = None;
        let mut n = None;
        let mut cfg = RunConfig::new(MoveSet::queen(), 0, (1, 1));
        for token in s.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("config token {token:?} is not key=value")))?;
            let int = |v: &str| v.parse::<u64>().map_err(|_| Error::Usage(format!("bad value for {key}: {v:?}")));
            match key {
                "piece" => piece = Some(parse_piece(value)?),
                "board" => cfg.board = parse_board(value)?,
                "q" => q = Some(int(value)?),
                "n" => n = Some(parse_range(value)?),
                "period" => cfg.period = Some(int(value)?),
                "format" => cfg.format = value.parse()?,
                "budget" => {
                    cfg.budget = Budget(value.parse().map_err(|_| Error::Usage(format!("bad budget {value:?}")))?)
                }
                "threads" => cfg.threads = Some(int(value)? as usize),
                _ => return Err(Error::Usage(format!("unknown config key {key:?}"))),
            }
        }
        cfg.piece = piece.ok_or_else(|| Error::Usage("config needs piece=".into()))?;
        cfg.q = q.ok_or_else(|| Error::Usage("config needs q=".into()))?;
        cfg.n = n.ok_or_else(|| Error::Usage("config needs n=".into()))?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut c = RunConfig::new(MoveSet::nightrider(), 3, (2, 9));
        c.board = parse_board("poly:-1,0,0;0,-1,1/2;1,1,5/3").unwrap();
        c.period = Some(2);
        c.threads = Some(4);
        c.format = Format::Csv;
        c.budget = Budget(12345);
        let text = c.to_string();
        assert_eq!(text.parse::<RunConfig>().unwrap(), c);
        assert_eq!(text.parse::<RunConfig>().unwrap().to_string(), text);

        let custom = RunConfig::new(parse_piece("1,3;2,1").unwrap(), 2, (1, 1));
        assert_eq!(custom.to_string().parse::<RunConfig>().unwrap(), custom);
    }

    #[test]
    fn rejects_incomplete() {
        assert!("piece=queen q=2".parse::<RunConfig>().is_err());
        assert!("piece=queen q=2 n=1:3 colour=red".parse::<RunConfig>().is_err());
    }
}
