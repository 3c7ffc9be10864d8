#!/usr/bin/env python3
"""Independent artifact-code oracle.

Parses a TriG file with rdflib, rewrites the temporary base to the
placeholder, serializes each quad as canonical N-Quads by hand, sorts the
lines, hashes them with SHA-256 and prints the RA code and the published
URI.

    python3 tools/trusty_oracle.py FILE.trig TEMP_BASE [PUBLISH_BASE]
"""

import base64
import hashlib
import sys

import rdflib
from rdflib import BNode, Dataset, Literal, URIRef
from rdflib.namespace import XSD

PLACEHOLDER = "urn:trusty:placeholder"

# Hashing needs the lexical forms exactly as written.
rdflib.NORMALIZE_LITERALS = False


def rebase(term, temp):
    if isinstance(term, URIRef) and str(term).startswith(temp):
        return URIRef(PLACEHOLDER + str(term)[len(temp):])
    return term


def escape(s):
    return (
        s.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )


def term(t):
    if isinstance(t, URIRef):
        return "<%s>" % t
    if isinstance(t, BNode):
        raise SystemExit("blank nodes are not allowed")
    if isinstance(t, Literal):
        out = '"%s"' % escape(str(t))
        if t.language:
            return out + "@" + t.language
        if t.datatype and t.datatype != XSD.string:
            return out + "^^<%s>" % t.datatype
        return out
    raise SystemExit("unexpected term %r" % (t,))


def main():
    path, temp = sys.argv[1], sys.argv[2]
    publish = sys.argv[3] if len(sys.argv) > 3 else "https://w3id.org/np/"
    ds = Dataset()
    ds.parse(path, format="trig")
    lines = []
    for s, p, o, g in ds.quads((None, None, None, None)):
        if g is None or str(g) == str(ds.default_graph.identifier):
            raise SystemExit("triple outside a named graph")
        lines.append(
            " ".join(term(rebase(x, temp)) for x in (s, p, o, g)) + " ."
        )
    data = "".join(line + "\n" for line in sorted(set(lines)))
    digest = hashlib.sha256(data.encode("utf-8")).digest()
    code = "RA" + base64.urlsafe_b64encode(digest).decode("ascii").rstrip("=")
    print(code)
    print(publish + code)


if __name__ == "__main__":
    main()
