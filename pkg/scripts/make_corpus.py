"""Regenerate the canonical documents in corpus/."""
from pathlib import Path

from finconv import exponentials as ex
from finconv import groups as gr
from finconv import spaces as sp
from finconv.harness.docformat import Document, serialize
from finconv.pasting import Cover

OUT = Path(__file__).resolve().parent.parent / "corpus"


def docs() -> dict[str, Document]:
    S = sp.sierpinski("p", "q")
    swap = sp.SpaceMap(S, S, ("q", "p"))
    out = {"sierpinski": Document().add_space("S", S).add_map("swap", swap, "S", "S")}

    X = sp.PseudoSpace.from_edges("abcd", [("a", "b"), ("c", "d")])
    T = sp.chain(["1", "2", "3"])
    q = sp.SpaceMap(X, T, ("1", "2", "2", "3"))
    out["disjoint_chains"] = Document().add_space("X", X).add_space("T", T).add_map("q", q, "X", "T")

    A = sp.sierpinski("a", "b")
    D = sp.discrete(["0", "1"])
    f = sp.SpaceMap(A, D, ("0", "1"))
    out["mixed_cover"] = (Document().add_space("A", A).add_space("D", D).add_map("f", f, "A", "D")
                          .add_cover("C", Cover(A, ({"a"}, {"b"})), "A"))

    K = sp.chain(["a", "b", "c"])
    out["chain_cover"] = Document().add_space("K", K).add_cover("C", Cover(K, ({"a", "b"}, {"b", "c"})), "K")

    E = ex.exponential(S, S).structure
    P = sp.product([S, S])
    out["sierpinski_constructions"] = Document().add_space("S", S).add_space("P", P).add_space("E", E)

    Z2 = gr.cyclic_group(2, sp.indiscrete(range(2)))
    Z3 = gr.cyclic_group(3)
    out["groups"] = (Document().add_space("I2", Z2.space).add_group("Z2", Z2, "I2")
                     .add_space("D3", Z3.space).add_group("Z3", Z3, "D3"))

    N = sp.chain(["a", "b", "c"], transitive=False)
    out["nontransitive_chain"] = Document().add_space("N", N)
    return out


def main() -> None:
    OUT.mkdir(exist_ok=True)
    for name, doc in docs().items():
        (OUT / f"{name}.fcv").write_text(serialize(doc), encoding="utf-8")
        print(f"corpus/{name}.fcv")


if __name__ == "__main__":
    main()
