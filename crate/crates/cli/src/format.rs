//! Symbol sequence encodings: digit strings, delimited decimal text, and
//! the ODBS binary container.
//!
//! Binary layout: a 16-byte header (magic "ODBS", version byte 1, n as
//! u32 little endian, k as u32 little endian with 0 meaning an unbounded
//! stream, symbol width byte, two reserved zero bytes) followed by the
//! symbols as little-endian unsigned integers of that width. The width is
//! the smallest of 1, 2, 4, or 8 bytes that holds k-1, or the largest
//! emitted symbol when k is 0.

use onion_debruijn::Symbol;

pub const MAGIC: [u8; 4] = *b"ODBS";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolFormat {
    Digits,
    Delimited(char),
    Binary,
}

/// Encoding or parse failure, with the byte position when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub position: Option<usize>,
    pub message: String,
}

impl FormatError {
    fn at(position: usize, message: impl Into<String>) -> Self {
        Self {
            position: Some(position),
            message: message.into(),
        }
    }

    fn new(message: impl Into<String>) -> Self {
        Self {
            position: None,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.position {
            Some(position) => write!(f, "byte {}: {}", position, self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

/// Parsed input: the symbols plus the (n, k) pair when the source was a
/// binary header. A header k of 0 marks an unbounded stream dump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub symbols: Vec<Symbol>,
    pub header: Option<(u32, u32)>,
}

fn width_for(max_value: u64) -> u8 {
    match max_value {
        0..=0xFF => 1,
        0x100..=0xFFFF => 2,
        0x1_0000..=0xFFFF_FFFF => 4,
        _ => 8,
    }
}

/// Serializes `symbols`. For binary, `k` of 0 declares an unbounded
/// stream; the width then follows the largest symbol present.
pub fn encode(
    symbols: &[Symbol],
    format: SymbolFormat,
    n: usize,
    k: u64,
) -> Result<Vec<u8>, FormatError> {
    match format {
        SymbolFormat::Digits => {
            let mut out = Vec::with_capacity(symbols.len());
            for (index, &symbol) in symbols.iter().enumerate() {
                if symbol > 9 {
                    return Err(FormatError::new(format!(
                        "symbol {symbol} at position {index} does not fit the digits format; use delimited or binary"
                    )));
                }
                out.push(b'0' + symbol as u8);
            }
            Ok(out)
        }
        SymbolFormat::Delimited(delimiter) => {
            let parts: Vec<String> = symbols.iter().map(|s| s.to_string()).collect();
            Ok(parts.join(&delimiter.to_string()).into_bytes())
        }
        SymbolFormat::Binary => {
            let n = u32::try_from(n)
                .map_err(|_| FormatError::new("order n does not fit the binary header"))?;
            let k = u32::try_from(k)
                .map_err(|_| FormatError::new("alphabet size k does not fit the binary header"))?;
            let width = if k == 0 {
                width_for(symbols.iter().copied().max().unwrap_or(0))
            } else {
                width_for(u64::from(k) - 1)
            };
            let mut out = Vec::with_capacity(HEADER_LEN + symbols.len() * width as usize);
            out.extend_from_slice(&MAGIC);
            out.push(VERSION);
            out.extend_from_slice(&n.to_le_bytes());
            out.extend_from_slice(&k.to_le_bytes());
            out.push(width);
            out.extend_from_slice(&[0, 0]);
            for (index, &symbol) in symbols.iter().enumerate() {
                let bytes = symbol.to_le_bytes();
                if bytes[width as usize..].iter().any(|&b| b != 0) {
                    return Err(FormatError::new(format!(
                        "symbol {symbol} at position {index} does not fit width {width}"
                    )));
                }
                out.extend_from_slice(&bytes[..width as usize]);
            }
            Ok(out)
        }
    }
}

/// Whether `bytes` opens with the binary container magic.
pub fn looks_binary(bytes: &[u8]) -> bool {
    bytes.len() >= MAGIC.len() && bytes[..MAGIC.len()] == MAGIC
}

/// Parses input bytes. Binary is detected by its magic; otherwise the
/// requested text format applies, tolerating one trailing newline.
pub fn decode(bytes: &[u8], text_format: SymbolFormat) -> Result<Decoded, FormatError> {
    if looks_binary(bytes) {
        return decode_binary(bytes);
    }
    if text_format == SymbolFormat::Binary {
        return Err(FormatError::at(
            0,
            "binary input must start with the ODBS magic",
        ));
    }
    let text = match bytes {
        [head @ .., b'\r', b'\n'] => head,
        [head @ .., b'\n'] => head,
        _ => bytes,
    };
    match text_format {
        SymbolFormat::Digits => decode_digits(text),
        SymbolFormat::Delimited(delimiter) => decode_delimited(text, delimiter),
        SymbolFormat::Binary => unreachable!("handled above"),
    }
}

fn decode_binary(bytes: &[u8]) -> Result<Decoded, FormatError> {
    if bytes.len() < HEADER_LEN {
        return Err(FormatError::at(
            bytes.len(),
            format!("binary header truncated; need {HEADER_LEN} bytes"),
        ));
    }
    if bytes[4] != VERSION {
        return Err(FormatError::at(
            4,
            format!("unsupported version {}", bytes[4]),
        ));
    }
    let n = u32::from_le_bytes(bytes[5..9].try_into().expect("4 bytes"));
    let k = u32::from_le_bytes(bytes[9..13].try_into().expect("4 bytes"));
    let width = bytes[13] as usize;
    if !matches!(width, 1 | 2 | 4 | 8) {
        return Err(FormatError::at(13, format!("invalid symbol width {width}")));
    }
    if bytes[14] != 0 || bytes[15] != 0 {
        let position = if bytes[14] != 0 { 14 } else { 15 };
        return Err(FormatError::at(
            position,
            "reserved header bytes must be zero",
        ));
    }
    let payload = &bytes[HEADER_LEN..];
    if !payload.len().is_multiple_of(width) {
        return Err(FormatError::at(
            HEADER_LEN + payload.len() - payload.len() % width,
            format!("payload truncated mid-symbol (width {width})"),
        ));
    }
    let mut symbols = Vec::with_capacity(payload.len() / width);
    for chunk in payload.chunks_exact(width) {
        let mut buffer = [0u8; 8];
        buffer[..width].copy_from_slice(chunk);
        symbols.push(u64::from_le_bytes(buffer));
    }
    Ok(Decoded {
        symbols,
        header: Some((n, k)),
    })
}

fn decode_digits(text: &[u8]) -> Result<Decoded, FormatError> {
    let mut symbols = Vec::with_capacity(text.len());
    for (position, &byte) in text.iter().enumerate() {
        if !byte.is_ascii_digit() {
            return Err(FormatError::at(
                position,
                format!("expected a digit, found 0x{byte:02x}"),
            ));
        }
        symbols.push(u64::from(byte - b'0'));
    }
    Ok(Decoded {
        symbols,
        header: None,
    })
}

fn decode_delimited(text: &[u8], delimiter: char) -> Result<Decoded, FormatError> {
    if text.is_empty() {
        return Ok(Decoded {
            symbols: Vec::new(),
            header: None,
        });
    }
    let content = std::str::from_utf8(text)
        .map_err(|e| FormatError::at(e.valid_up_to(), "input is not valid UTF-8 text"))?;
    let mut symbols = Vec::new();
    let mut offset = 0usize;
    for token in content.split(delimiter) {
        if token.is_empty() {
            return Err(FormatError::at(offset, "empty value between delimiters"));
        }
        match token.parse::<u64>() {
            Ok(symbol) => symbols.push(symbol),
            Err(_) => {
                let bad = token.bytes().position(|b| !b.is_ascii_digit()).unwrap_or(0);
                return Err(FormatError::at(
                    offset + bad,
                    format!("cannot parse {token:?} as a symbol"),
                ));
            }
        }
        offset += token.len() + delimiter.len_utf8();
    }
    Ok(Decoded {
        symbols,
        header: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_round_trip() {
        let symbols = vec![0, 1, 1, 0, 0];
        let bytes = encode(&symbols, SymbolFormat::Digits, 2, 2).unwrap();
        assert_eq!(bytes, b"01100");
        let decoded = decode(&bytes, SymbolFormat::Digits).unwrap();
        assert_eq!(decoded.symbols, symbols);
        assert_eq!(decoded.header, None);
    }

    #[test]
    fn digits_reject_wide_symbols_and_bad_bytes() {
        let err = encode(&[3, 12], SymbolFormat::Digits, 1, 13).unwrap_err();
        assert!(err.message.contains("12"));
        let err = decode(b"01x0", SymbolFormat::Digits).unwrap_err();
        assert_eq!(err.position, Some(2));
    }

    #[test]
    fn delimited_round_trip_with_custom_delimiter() {
        let symbols = vec![0, 22, 1, 300];
        let bytes = encode(&symbols, SymbolFormat::Delimited(';'), 2, 301).unwrap();
        assert_eq!(bytes, b"0;22;1;300");
        let decoded = decode(&bytes, SymbolFormat::Delimited(';')).unwrap();
        assert_eq!(decoded.symbols, symbols);
    }

    #[test]
    fn delimited_reports_bad_token_position() {
        let err = decode(b"0,1,x2,3", SymbolFormat::Delimited(',')).unwrap_err();
        assert_eq!(err.position, Some(4));
        let err = decode(b"0,,1", SymbolFormat::Delimited(',')).unwrap_err();
        assert_eq!(err.position, Some(2));
    }

    #[test]
    fn trailing_newline_is_tolerated() {
        assert_eq!(
            decode(b"0110\n", SymbolFormat::Digits).unwrap().symbols,
            vec![0, 1, 1, 0]
        );
        assert_eq!(
            decode(b"7,8\r\n", SymbolFormat::Delimited(','))
                .unwrap()
                .symbols,
            vec![7, 8]
        );
    }

    #[test]
    fn binary_round_trip_widths() {
        for (k, expected_width) in [(2u64, 1usize), (3, 1), (300, 2), (70000, 4)] {
            let symbols = vec![0, 1, k - 1];
            let bytes = encode(&symbols, SymbolFormat::Binary, 1, k).unwrap();
            assert_eq!(bytes[13] as usize, expected_width, "k={k}");
            assert_eq!(bytes.len(), HEADER_LEN + symbols.len() * expected_width);
            let decoded = decode(&bytes, SymbolFormat::Digits).unwrap();
            assert_eq!(decoded.symbols, symbols, "k={k}");
            assert_eq!(decoded.header, Some((1, k as u32)));
        }
        // The header holds k as u32, so width 8 only arises for unbounded
        // streams whose symbols pass u32::MAX.
        let symbols = vec![0, 1 << 40];
        let bytes = encode(&symbols, SymbolFormat::Binary, 1, 0).unwrap();
        assert_eq!(bytes[13], 8);
        assert_eq!(
            decode(&bytes, SymbolFormat::Digits).unwrap().symbols,
            symbols
        );
    }

    #[test]
    fn binary_header_layout_is_exact() {
        let bytes = encode(&[5, 0], SymbolFormat::Binary, 3, 7).unwrap();
        assert_eq!(&bytes[..4], b"ODBS");
        assert_eq!(bytes[4], 1);
        assert_eq!(&bytes[5..9], &3u32.to_le_bytes());
        assert_eq!(&bytes[9..13], &7u32.to_le_bytes());
        assert_eq!(bytes[13], 1);
        assert_eq!(&bytes[14..16], &[0, 0]);
        assert_eq!(&bytes[16..], &[5, 0]);
    }

    #[test]
    fn binary_stream_header_uses_zero_k_and_max_symbol_width() {
        let bytes = encode(&[0, 1, 2, 700], SymbolFormat::Binary, 2, 0).unwrap();
        let decoded = decode(&bytes, SymbolFormat::Digits).unwrap();
        assert_eq!(decoded.header, Some((2, 0)));
        assert_eq!(bytes[13], 2);
        assert_eq!(decoded.symbols, vec![0, 1, 2, 700]);
    }

    #[test]
    fn binary_rejects_corruption() {
        let good = encode(&[1, 0, 1], SymbolFormat::Binary, 1, 2).unwrap();

        let mut truncated_header = good.clone();
        truncated_header.truncate(10);
        assert!(decode(&truncated_header, SymbolFormat::Digits).is_err());

        let mut bad_version = good.clone();
        bad_version[4] = 9;
        assert_eq!(
            decode(&bad_version, SymbolFormat::Digits)
                .unwrap_err()
                .position,
            Some(4)
        );

        let mut bad_width = good.clone();
        bad_width[13] = 3;
        assert_eq!(
            decode(&bad_width, SymbolFormat::Digits)
                .unwrap_err()
                .position,
            Some(13)
        );

        let mut bad_reserved = good.clone();
        bad_reserved[14] = 1;
        assert_eq!(
            decode(&bad_reserved, SymbolFormat::Digits)
                .unwrap_err()
                .position,
            Some(14)
        );

        let wide = encode(&[0, 70000], SymbolFormat::Binary, 1, 70001).unwrap();
        let mut torn = wide.clone();
        torn.truncate(wide.len() - 1);
        let err = decode(&torn, SymbolFormat::Digits).unwrap_err();
        assert_eq!(err.position, Some(HEADER_LEN + 4));
    }

    #[test]
    fn explicit_binary_flag_requires_magic() {
        let err = decode(b"0101", SymbolFormat::Binary).unwrap_err();
        assert_eq!(err.position, Some(0));
    }
}
