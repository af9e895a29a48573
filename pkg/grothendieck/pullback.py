"""
FIBRA - Pullback of a Grothendieck construction along a map of bases.
"""

from dataclasses import dataclass

from core.errors import NotOverBaseError
from finspace.space import ContinuousMap
from functorcat.functor import TopFunctor
from grothendieck.construction import GrothSpace, groth


@dataclass(frozen=True)
class PullbackSquare:
    """The square  ∫Df --g--> ∫D  over  X --f--> B."""

    functor: TopFunctor  # Df
    along: ContinuousMap  # f: X -> B
    pulled: GrothSpace  # ∫Df over X
    original: GrothSpace  # ∫D over B
    g: ContinuousMap  # (x, y) |-> (f(x), y)

    def commutes(self) -> bool:
        left = self.original.projection.compose(self.g).image
        right = self.along.compose(self.pulled.projection).image
        return left == right

    def factor(self, alpha: ContinuousMap, beta: ContinuousMap) -> ContinuousMap:
        """The map gamma: Z -> ∫Df with pr_X gamma = alpha and g gamma = beta.

        alpha: Z -> X and beta: Z -> ∫D must satisfy f alpha = pi beta.
        """
        if alpha.dom != beta.dom:
            raise NotOverBaseError("the two legs have different domains")
        over_b = self.along.compose(alpha).image
        if over_b != self.original.projection.compose(beta).image:
            raise NotOverBaseError("the two legs do not agree over the base")
        image = []
        for z in range(len(alpha.dom)):
            _, y = self.original.tag(beta.image[z])
            image.append(self.pulled.point(alpha.image[z], y))
        return ContinuousMap(alpha.dom, self.pulled.space, image)


def pullback_functor(D: TopFunctor, f: ContinuousMap) -> PullbackSquare:
    """Df over X with the over-map g: ∫Df -> ∫D."""
    Df = D.precompose(f)
    pulled = groth(Df)
    original = groth(D)
    image = []
    for k in range(len(pulled.space)):
        x, y = pulled.tag(k)
        image.append(original.point(f.image[x], y))
    g = ContinuousMap(pulled.space, original.space, image)
    return PullbackSquare(Df, f, pulled, original, g)
