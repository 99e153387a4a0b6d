use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

/// Canonical title form used as the duplicate key.
///
/// Case-folds, strips diacritics (NFKD then drop combining marks), collapses
/// every run of non-alphanumeric characters into one space and trims.
pub fn normalize_title(title: &str) -> String {
    // decompose before and after folding: compatibility forms such as
    // mathematical letters fold only once decomposed, and some folds emit
    // combining marks of their own
    let stripped: String = title.nfkd().filter(|c| !is_combining_mark(*c)).collect();
    let folded = caseless::default_case_fold_str(&stripped);
    let mut out = String::with_capacity(folded.len());
    let mut pending_space = false;
    for ch in folded.nfkd().filter(|c| !is_combining_mark(*c)) {
        if ch.is_alphanumeric() {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.push(ch);
        } else {
            pending_space = true;
        }
    }
    out
}
