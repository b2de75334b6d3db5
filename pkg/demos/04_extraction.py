"""From semantic validity to a cut-free proof, stage by stage."""

from seqbes import extract_proof, parse_sequent, render

s = parse_sequent("p -> q, q -> r => p -> r")
for variant in ("full", "quasi"):
    rep = extract_proof(s.left, s.right, variant)
    print(f"=== {variant} simulation base")
    print("proxy atoms:", ", ".join(p.name for p in rep.mapping.inverse if p.is_mapped))
    print("\natomic derivation of the succedent proxies:")
    print(rep.stage_pi.to_text(1))
    print("\nafter carrying the hypotheses and translating back:")
    print(rep.stage_pi_dprime.to_text(1))
    if rep.stage_rewritten is not None:
        print("\nplaceholder rules replaced by cuts:")
        print(rep.stage_rewritten.to_text(1))
    print("\nfinal cut-free proof:")
    print(rep.final.to_text(1))
    print("statistics:", rep.statistics, "\n")

print(render(rep.final, "latex"))
