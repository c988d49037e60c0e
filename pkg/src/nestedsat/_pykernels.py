"""Pure-Python versions of the hot loops.

These mirror ``_ckernels.pyx`` statement for statement and are used when the
compiled extension is unavailable (or when a caller asks for them, e.g. the
backend benchmark).  Inputs are plain lists or 1-d integer arrays.

Clause arrays passed to :func:`solve_flat` already carry the sentinel clause:
``var``/``pos`` hold variable and polarity separately so that the sentinel
literal ``+0`` can be represented.
"""

BACKEND = "python"


def solve_flat(var, pos, start, n):
    """Run the interval-partition sweep over every clause, sentinel included.

    Returns ``(verdict, visited, bad)``: verdict 1/0 for SAT/UNSAT, or -1 when
    clause ``bad`` (0-based) is not made of live partition points.
    """
    var = list(var)
    pos = list(pos)
    start = list(start)
    nxt = list(range(1, n + 2))
    dead = [False] * (n + 2)
    # sat[x] as four flat slots: ff, ft, tf, tt
    sat = [1] * (4 * (n + 1))
    visited = 0
    for i in range(len(start) - 1):
        j = start[i]
        end = start[i + 1]
        x = var[j]
        l = x
        r = var[end - 1]
        if dead[l]:
            return -1, visited, i
        ff = tt = 1
        ft = tf = 0
        while True:
            visited += 1
            v = var[j]
            if x == v:
                if pos[j]:
                    if ft == 1:
                        ft = 2
                    if tt == 1:
                        tt = 2
                else:
                    if ff == 1:
                        ff = 2
                    if tf == 1:
                        tf = 2
                j += 1
                if j == end:
                    break
            if x != l:
                dead[x] = True
            b = 4 * x
            sff = sat[b]
            sft = sat[b + 1]
            stf = sat[b + 2]
            stt = sat[b + 3]
            a, c = ff * sff, ft * stf
            nff = a if a > c else c
            a, c = ff * sft, ft * stt
            nft = a if a > c else c
            a, c = tf * sff, tt * stf
            ntf = a if a > c else c
            a, c = tf * sft, tt * stt
            ntt = a if a > c else c
            ff, ft, tf, tt = nff, nft, ntf, ntt
            x = nxt[x]
            if x > var[j]:
                return -1, visited, i
        nxt[l] = r
        b = 4 * l
        sat[b] = ff >> 1
        sat[b + 1] = ft >> 1
        sat[b + 2] = tf >> 1
        sat[b + 3] = tt >> 1
    return sat[3], visited, -1


def _find(parent, p):
    root = p
    while parent[root] != root:
        root = parent[root]
    while parent[p] != root:
        parent[p], p = root, parent[p]
    return root


def order_violation(lit, start, n):
    """First clause that has a variable strictly inside an earlier clause's span.

    Returns ``(earlier, later)`` as 0-based indices, or ``(-1, -1)`` when every
    clause is straddled only by clauses after it.  ``parent`` is a
    next-uncovered-point union-find over 0..n+1 so each point is covered once.
    """
    lit = list(lit)
    start = list(start)
    parent = list(range(n + 2))
    owner = [-1] * (n + 2)
    for i in range(len(start) - 1):
        s, e = start[i], start[i + 1]
        for j in range(s, e):
            o = owner[abs(lit[j])]
            if o >= 0:
                return o, i
        lo = abs(lit[s])
        hi = abs(lit[e - 1])
        p = _find(parent, lo + 1)
        while p < hi:
            owner[p] = i
            parent[p] = p + 1
            p = _find(parent, p + 1)
    return -1, -1


def generate_sweep(n, opens, closes, interior_u, p_interior, max_width, sign_u, p_neg):
    """Sweep positions 1..n opening and closing intervals LIFO.

    ``opens[x]``/``closes[x]`` are per-position counts (closes are clipped to
    the stack size, and everything still open closes at ``n``).  Each live
    position strictly inside the innermost open interval becomes one of its
    interior literals with probability ``p_interior``.  Signs are taken from
    ``sign_u`` in literal-creation order.  Clauses are emitted as they close,
    which is post-order.  Returns flat ``(lit, start)`` lists.
    """
    m_total = sum(opens)
    left = [0] * m_total
    right = [0] * m_total
    head = [-1] * m_total
    tail = [-1] * m_total
    count = [0] * m_total
    pool_lit = []
    pool_next = []
    close_seq = []
    stack = []
    k = 0
    si = 0
    cap = max_width - 2
    for x in range(1, n + 1):
        c = len(stack) if x == n else min(closes[x], len(stack))
        for _ in range(c):
            iv = stack.pop()
            right[iv] = -x if sign_u[si] < p_neg else x
            si += 1
            close_seq.append(iv)
        if stack and interior_u[x] < p_interior:
            top = stack[-1]
            if count[top] < cap:
                pool_lit.append(-x if sign_u[si] < p_neg else x)
                si += 1
                pool_next.append(-1)
                node = len(pool_lit) - 1
                if tail[top] < 0:
                    head[top] = node
                else:
                    pool_next[tail[top]] = node
                tail[top] = node
                count[top] += 1
        if x < n:
            for _ in range(opens[x]):
                left[k] = -x if sign_u[si] < p_neg else x
                si += 1
                stack.append(k)
                k += 1
    lit = []
    start = [0]
    for iv in close_seq:
        lit.append(left[iv])
        node = head[iv]
        while node >= 0:
            lit.append(pool_lit[node])
            node = pool_next[node]
        lit.append(right[iv])
        start.append(len(lit))
    return lit, start
