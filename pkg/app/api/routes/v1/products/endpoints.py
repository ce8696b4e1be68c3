# app/api/routes/v1/products/endpoints.py
from app.services.words.parsing import format_poly, format_word, parse_composition, parse_word
from app.services.words.word_algebra import format_multiset, qshuffle, shuffle, stuffle

from .request import ProductRequest
from .response import ProductResponse


async def expand_product(request: ProductRequest) -> ProductResponse:
    """Expand left * right for the requested product."""
    if request.type == "stuffle":
        u, v = parse_composition(request.left), parse_composition(request.right)
        counts = stuffle(u, v)
        return ProductResponse(
            type=request.type,
            left=str(u),
            right=str(v),
            result=format_multiset(counts),
            terms=len(counts),
        )

    u, v = parse_word(request.left), parse_word(request.right)
    poly = shuffle(u, v) if request.type == "shuffle" else qshuffle(u, v)
    return ProductResponse(
        type=request.type,
        left=format_word(u),
        right=format_word(v),
        result=format_poly(poly),
        terms=len(poly),
    )
