//! Text syntax for pieces, boards and ranges.
//!
//! * pieces: a preset (`queen`, `rook`, `bishop`, `nightrider`, `semiqueen`) or moves `c1,d1;c2,d2;...`
//! * boards: `square`, `rect:a,b`, or `poly:a1,b1,beta1;a2,b2,beta2;...` for `a·x + b·y <= beta`
//! * ranges: `a:b` (inclusive) or a single `n`
//!
//! Rationals are written `p/q` or as integers.

use riders_core::quasipoly::parse_rational;
use riders_core::{BoardPolygon, Inequality, MoveSet};

use crate::Error;

pub fn parse_moves(s: &str) -> Result<MoveSet, Error> {
    let mut raw = Vec::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (c, d) = part
            .split_once(',')
            .ok_or_else(|| Error::Usage(format!("move {part:?} is not of the form c,d")))?;
        let int = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::Usage(format!("bad move coordinate {t:?}")));
        raw.push((int(c)?, int(d)?));
    }
    Ok(MoveSet::new(&raw)?)
}

pub fn parse_piece(s: &str) -> Result<MoveSet, Error> {
    match MoveSet::preset(s.trim()) {
        Some(ms) => Ok(ms),
        None if s.contains(',') => parse_moves(s),
        None => Err(Error::Usage(format!(
            "unknown piece {s:?}; use queen, rook, bishop, nightrider, semiqueen or moves like 1,0;0,1"
        ))),
    }
}

pub fn parse_board(s: &str) -> Result<BoardPolygon, Error> {
    let s = s.trim();
    if s == "square" {
        return Ok(BoardPolygon::square());
    }
    if let Some(rest) = s.strip_prefix("rect:") {
        let (a, b) = rest
            .split_once(',')
            .ok_or_else(|| Error::Usage(format!("rectangle {s:?} is not of the form rect:a,b")))?;
        return Ok(BoardPolygon::rectangle(parse_rational(a)?, parse_rational(b)?)?);
    }
    if let Some(rest) = s.strip_prefix("poly:") {
        let mut rows = Vec::new();
        for part in rest.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let f: Vec<&str> = part.split(',').collect();
            if f.len() != 3 {
                return Err(Error::Usage(format!("inequality {part:?} is not of the form a,b,beta")));
            }
            let int = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::Usage(format!("bad coefficient {t:?}")));
            rows.push(Inequality::new(int(f[0])?, int(f[1])?, parse_rational(f[2])?));
        }
        return Ok(BoardPolygon::from_inequalities(rows)?);
    }
    Err(Error::Usage(format!("unknown board {s:?}; use square, rect:a,b or poly:a,b,beta;...")))
}

pub fn parse_range(s: &str) -> Result<(u64, u64), Error> {
    let int = |t: &str| t.trim().parse::<u64>().map_err(|_| Error::Usage(format!("bad range bound {t:?}")));
    let (a, b) = match s.split_once(':') {
        Some((a, b)) => (int(a)?, int(b)?),
        None => {
            let n = int(s)?;
            (n, n)
        }
    };
    if a > b {
        return Err(Error::Usage(format!("empty range {s:?}")));
    }
    Ok((a, b))
}

/// Preset name when the move set matches one up to order, else the sorted move string.
pub fn piece_text(ms: &MoveSet) -> String {
    let key = |m: &MoveSet| {
        let mut v: Vec<(i64, i64)> = m.moves().iter().map(|m| (m.c(), m.d())).collect();
        v.sort_unstable();
        v
    };
    let mine = key(ms);
    for name in ["queen", "rook", "bishop", "nightrider", "semiqueen"] {
        if key(&MoveSet::preset(name).unwrap()) == mine {
            return name.into();
        }
    }
    let parts: Vec<String> = mine.iter().map(|(c, d)| format!("{c},{d}")).collect();
    parts.join(";")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn pieces() {
        assert_eq!(parse_piece("queen").unwrap().len(), 4);
        assert_eq!(parse_piece("1,0;0,1").unwrap().moves(), MoveSet::rook().moves());
        assert_eq!(piece_text(&parse_piece("0,1;1,0").unwrap()), "rook");
        assert_eq!(piece_text(&parse_piece("1,2;1,0").unwrap()), "1,0;1,2");
        assert!(parse_piece("dragon").is_err());
        assert!(parse_piece("2,2").is_err());
        assert!(parse_piece("1,0;2,0").is_err());
    }

    #[test]
    fn boards() {
        assert_eq!(parse_board("square").unwrap(), BoardPolygon::square());
        let r = parse_board("rect:3/2,2").unwrap();
        assert_eq!(r.area(), BigRational::new(3.into(), 1.into()));
        assert_eq!(parse_board(&r.to_text()).unwrap(), r);
        let t = parse_board("poly:-1,0,0;0,-1,0;1,1,1").unwrap();
        assert_eq!(parse_board(&t.to_text()).unwrap(), t);
        assert!(parse_board("poly:1,0,1;-1,0,0").is_err());
        assert!(parse_board("circle").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1:6").unwrap(), (1, 6));
        assert_eq!(parse_range("4").unwrap(), (4, 4));
        assert!(parse_range("6:1").is_err());
    }
}
