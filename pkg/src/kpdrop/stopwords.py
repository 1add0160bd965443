"""English stopword list used for candidate phrase boundaries.

Compared on the lowercased norm of a token, so hyphenated tokens such
as "state-of-the-art" are never stopwords.
"""

from __future__ import annotations

STOPWORDS: frozenset[str] = frozenset("""
a about above after again against all also am an and any are as at
back be because been before being below between both but by can
cannot could did do does doing down during each few for from further
had has have having he her here hers herself him himself his how i
if in into is it its itself just may me might more most much must my
myself no nor not now of off on once one only or other our ours
ourselves out over own same shall she should since so some such than
that the their theirs them themselves then there these they this
those through to too under until up upon us very was we were what
when where whether which while who whom why will with within without
would you your yours yourself yourselves
""".split())
