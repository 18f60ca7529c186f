"""Built-in lexicons: symbol dictionary, stopwords, negation cues, gazetteer.

Everything here is a plain Python constant so the package runs with no data
files and every default is overridable through the pipeline config.
"""

# Chemical element symbol -> spelled-out name, lowercase. The nobelium entry
# ("no") is deliberately absent from the defaults: the token "no" is a negation
# cue and rewriting it would blind the negation filter.
ELEMENT_NAMES = {
    "h": "hydrogen", "he": "helium", "li": "lithium", "be": "beryllium",
    "b": "boron", "c": "carbon", "n": "nitrogen", "o": "oxygen",
    "f": "fluorine", "ne": "neon", "na": "sodium", "mg": "magnesium",
    "al": "aluminium", "si": "silicon", "p": "phosphorus", "s": "sulfur",
    "cl": "chlorine", "ar": "argon", "k": "potassium", "ca": "calcium",
    "sc": "scandium", "ti": "titanium", "v": "vanadium", "cr": "chromium",
    "mn": "manganese", "fe": "iron", "co": "cobalt", "ni": "nickel",
    "cu": "copper", "zn": "zinc", "ga": "gallium", "ge": "germanium",
    "as": "arsenic", "se": "selenium", "br": "bromine", "kr": "krypton",
    "rb": "rubidium", "sr": "strontium", "y": "yttrium", "zr": "zirconium",
    "nb": "niobium", "mo": "molybdenum", "tc": "technetium", "ru": "ruthenium",
    "rh": "rhodium", "pd": "palladium", "ag": "silver", "cd": "cadmium",
    "in": "indium", "sn": "tin", "sb": "antimony", "te": "tellurium",
    "i": "iodine", "xe": "xenon", "cs": "caesium", "ba": "barium",
    "la": "lanthanum", "ce": "cerium", "pr": "praseodymium", "nd": "neodymium",
    "pm": "promethium", "sm": "samarium", "eu": "europium", "gd": "gadolinium",
    "tb": "terbium", "dy": "dysprosium", "ho": "holmium", "er": "erbium",
    "tm": "thulium", "yb": "ytterbium", "lu": "lutetium", "hf": "hafnium",
    "ta": "tantalum", "w": "tungsten", "re": "rhenium", "os": "osmium",
    "ir": "iridium", "pt": "platinum", "au": "gold", "hg": "mercury",
    "tl": "thallium", "pb": "lead", "bi": "bismuth", "po": "polonium",
    "at": "astatine", "rn": "radon", "fr": "francium", "ra": "radium",
    "ac": "actinium", "th": "thorium", "pa": "protactinium", "u": "uranium",
    "np": "neptunium", "pu": "plutonium", "am": "americium", "cm": "curium",
    "bk": "berkelium", "cf": "californium", "es": "einsteinium", "fm": "fermium",
    "md": "mendelevium", "no": "nobelium", "lr": "lawrencium",
    "rf": "rutherfordium", "db": "dubnium", "sg": "seaborgium", "bh": "bohrium",
    "hs": "hassium", "mt": "meitnerium", "ds": "darmstadtium",
    "rg": "roentgenium", "cn": "copernicium", "nh": "nihonium",
    "fl": "flerovium", "mc": "moscovium", "lv": "livermorium",
    "ts": "tennessine", "og": "oganesson",
}

# Greek letters and a few math glyphs, mapped to ASCII words so normalized
# tokens stay searchable.
MATH_SYMBOL_NAMES = {
    "α": "alpha", "β": "beta", "γ": "gamma", "δ": "delta", "ε": "epsilon",
    "ζ": "zeta", "η": "eta", "θ": "theta", "κ": "kappa", "λ": "lambda",
    "μ": "mu", "ν": "nu", "ξ": "xi", "π": "pi", "ρ": "rho", "σ": "sigma",
    "τ": "tau", "φ": "phi", "χ": "chi", "ψ": "psi", "ω": "omega",
    "∞": "infinity", "°": "degree", "%": "percent",
}

# The negation-cue collision noted above.
_EXCLUDED_DEFAULT_SYMBOLS = {"no"}


def default_symbol_entries() -> dict[str, str]:
    """Element symbols plus math glyphs, minus negation-cue collisions."""
    entries = {k: v for k, v in ELEMENT_NAMES.items() if k not in _EXCLUDED_DEFAULT_SYMBOLS}
    entries.update(MATH_SYMBOL_NAMES)
    return entries


DEFAULT_NEGATION_LEXICON = frozenset({
    "not", "no", "never", "none", "neither", "nor", "cannot", "n't",
    "except", "without",
})

DEFAULT_STOPWORDS = frozenset({
    "a", "an", "the", "is", "are", "was", "were", "be", "been", "being",
    "am", "do", "does", "did", "done", "have", "has", "had", "having",
    "what", "which", "who", "whom", "whose", "when", "where", "why", "how",
    "this", "that", "these", "those", "it", "its", "itself",
    "of", "in", "on", "at", "to", "for", "with", "by", "from", "as",
    "and", "or", "but", "not", "no", "nor", "neither", "if", "then", "than",
    "so", "such", "there", "here", "all", "any", "each", "both", "few",
    "more", "most", "other", "some", "can", "will", "would", "should",
    "could", "may", "might", "must", "shall",
    "i", "you", "he", "she", "we", "they", "them", "his", "her", "their",
    "our", "your", "my", "me", "him", "us",
    "between", "into", "through", "during", "before", "after", "above",
    "below", "up", "down", "out", "off", "over", "under", "again", "further",
    "once", "about", "against", "only", "own", "same", "too", "very", "just",
    "also",
})

# Small built-in gazetteer for the baseline entity extractor. Surfaces are in
# normalized (lowercase) form; multi-word surfaces are space separated.
DEFAULT_GAZETTEER = {
    # organizations
    "google": "ORG", "apple": "ORG", "microsoft": "ORG", "amazon": "ORG",
    "facebook": "ORG", "tesla": "ORG", "ibm": "ORG", "intel": "ORG",
    "samsung": "ORG", "toyota": "ORG", "nasa": "ORG", "isro": "ORG",
    "unesco": "ORG", "unicef": "ORG", "united nations": "ORG",
    "world bank": "ORG", "reserve bank": "ORG", "east india company": "ORG",
    # locations
    "india": "LOC", "china": "LOC", "japan": "LOC", "france": "LOC",
    "germany": "LOC", "england": "LOC", "america": "LOC", "russia": "LOC",
    "brazil": "LOC", "australia": "LOC", "africa": "LOC", "asia": "LOC",
    "europe": "LOC", "delhi": "LOC", "mumbai": "LOC", "london": "LOC",
    "paris": "LOC", "tokyo": "LOC", "ganga": "LOC", "himalaya": "LOC",
    "himalayas": "LOC", "everest": "LOC", "sahara": "LOC", "amazon river": "LOC",
    "pacific": "LOC", "atlantic": "LOC",
    # people
    "newton": "PERSON", "einstein": "PERSON", "darwin": "PERSON",
    "mendeleev": "PERSON", "gandhi": "PERSON", "nehru": "PERSON",
    "akbar": "PERSON", "ashoka": "PERSON", "bohr": "PERSON",
    "faraday": "PERSON", "curie": "PERSON", "tesla coil": "MISC",
    "dalton": "PERSON", "rutherford": "PERSON", "pythagoras": "PERSON",
    "archimedes": "PERSON", "galileo": "PERSON", "kepler": "PERSON",
}
