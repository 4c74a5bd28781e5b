"""Seeded fuzz generator for the identifier grammar.

Produces a mix of raw random bytes, random unicode, near-miss mutations of
valid identifiers, and fully valid canonical identifiers.  The only
acceptable outcomes for parse() are a value or a SwhidParseError; anything
else is a crash.
"""

import random
import string

from swhid.model import QualifiedIdentifier, SwhidParseError, parse

HEX = "0123456789abcdef"
TAGS = ["snp", "rel", "rev", "dir", "cnt"]
URL_CHARS = string.ascii_letters + string.digits + ":/._-~%?#&+"


def random_valid_identifier(rng: random.Random) -> str:
    text = f"swh:1:{rng.choice(TAGS)}:{''.join(rng.choices(HEX, k=40))}"
    if rng.random() < 0.5:
        host = "".join(rng.choices(string.ascii_lowercase, k=rng.randint(1, 12)))
        path = "".join(rng.choices(string.ascii_lowercase + string.digits + "/._-", k=rng.randint(0, 20)))
        text += f";origin=https://{host}.example/{path}"
    if rng.random() < 0.5:
        start = rng.randint(1, 10**6)
        if rng.random() < 0.5:
            text += f";lines={start}"
        else:
            text += f";lines={start}-{rng.randint(start, start + 10**4)}"
    return text


def _mutate(text: str, rng: random.Random) -> str:
    ops = rng.randint(1, 3)
    chars = list(text)
    for _ in range(ops):
        if not chars:
            break
        op = rng.random()
        i = rng.randrange(len(chars))
        if op < 0.3:
            del chars[i]
        elif op < 0.6:
            chars[i] = chr(rng.randint(0, 0x2FF))
        elif op < 0.8:
            chars.insert(i, chr(rng.randint(0, 0x2FF)))
        else:
            chars[i] = chars[i].swapcase()
    return "".join(chars)


def _random_garbage(rng: random.Random) -> str:
    kind = rng.random()
    n = rng.randint(0, 120)
    if kind < 0.5:
        return bytes(rng.randrange(256) for _ in range(n)).decode("latin-1")
    return "".join(chr(rng.randint(0, 0x10FFFF - 2048)) for _ in range(n))


def run_parse_fuzz(iterations: int, seed: int = 20260809) -> dict:
    """Fuzz parse(); returns counters.  Raises on any crash or bad roundtrip."""
    rng = random.Random(seed)
    stats = {"total": 0, "valid": 0, "rejected": 0}
    for i in range(iterations):
        bucket = i % 4
        if bucket == 0:
            text = _random_garbage(rng)
        elif bucket in (1, 2):
            text = _mutate(random_valid_identifier(rng), rng)
        else:
            text = random_valid_identifier(rng)
        stats["total"] += 1
        try:
            qid = parse(text)
        except SwhidParseError:
            stats["rejected"] += 1
            continue
        # parse returned a value: it must round-trip as a value
        assert isinstance(qid, QualifiedIdentifier)
        assert parse(str(qid)) == qid, f"value roundtrip failed for {text!r}"
        if bucket == 3:
            assert str(qid) == text, f"canonical input reprinted differently: {text!r}"
        stats["valid"] += 1
    return stats
