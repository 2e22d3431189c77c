from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework import status

from ..conf import bench_setting
from ..exceptions import BenchError
from ..extremal import build_construction
from ..graphs import (
    canonical_code, components, degrees, is_bipartite, is_connected, is_triangle_free, max_degree,
)
from ..serializers import (
    ConstructQuerySerializer, ContainmentQuerySerializer, GraphQuerySerializer,
    PerronDataSerializer, PerronFloorSerializer, SpectrumQuerySerializer, SpectrumResultSerializer,
)
from ..spectra import (
    adjacency_spectrum, check_perron_floor, perron_vector, signless_laplacian_spectrum,
)
from ..star_forest import contains_star_forest, high_degree_vertices
from .erreurs import reponse_erreur


def infos_graphe(g) -> dict:
    """Faits structurels de base"""
    infos = {
        'graph6': str(g),
        'n': g.n,
        'edges': g.edge_count,
        'degrees': degrees(g),
        'max_degree': max_degree(g),
        'connected': is_connected(g),
        'components': len(components(g)),
        'bipartite': is_bipartite(g) is not None,
        'triangle_free': is_triangle_free(g),
    }
    if g.n <= bench_setting('CANONICAL_CEILING'):
        infos['canonical_code'] = str(canonical_code(g))
    return infos


@api_view(['GET'])
@permission_classes([AllowAny])
def construire_graphe(request):
    """Construit une famille extrémale nommée (kind, params)"""
    query = ConstructQuerySerializer(data=request.query_params)
    if not query.is_valid():
        return Response(query.errors, status=status.HTTP_400_BAD_REQUEST)

    try:
        g = build_construction(query.validated_data['kind'], query.validated_data['params'].split(','))
    except BenchError as exc:
        return reponse_erreur(exc)
    return Response(infos_graphe(g))


@api_view(['GET'])
@permission_classes([AllowAny])
def spectre_graphe(request):
    """Spectre complet de A(G) ou de Q(G) = D(G) + A(G)"""
    query = SpectrumQuerySerializer(data=request.query_params)
    if not query.is_valid():
        return Response(query.errors, status=status.HTTP_400_BAD_REQUEST)

    g = query.validated_data['g6']
    try:
        if query.validated_data['matrix'] == 'signless':
            result = signless_laplacian_spectrum(g)
        else:
            result = adjacency_spectrum(g)
    except BenchError as exc:
        return reponse_erreur(exc)
    return Response({
        'graph6': str(g),
        'spectrum': SpectrumResultSerializer(result).data,
    })


@api_view(['GET'])
@permission_classes([AllowAny])
def perron_graphe(request):
    """Vecteur de Perron normalisé et plancher 1/ρ"""
    query = GraphQuerySerializer(data=request.query_params)
    if not query.is_valid():
        return Response(query.errors, status=status.HTTP_400_BAD_REQUEST)

    g = query.validated_data['g6']
    try:
        data = perron_vector(g)
        floor = check_perron_floor(g)
    except BenchError as exc:
        return reponse_erreur(exc)
    return Response({
        'graph6': str(g),
        'perron': PerronDataSerializer(data).data,
        'floor': PerronFloorSerializer(floor).data,
    })


@api_view(['GET'])
@permission_classes([AllowAny])
def contenance_graphe(request):
    """Le graphe contient-il la forêt d'étoiles ?"""
    query = ContainmentQuerySerializer(data=request.query_params)
    if not query.is_valid():
        return Response(query.errors, status=status.HTTP_400_BAD_REQUEST)

    g = query.validated_data['g6']
    forest = query.validated_data['forest']
    contains = contains_star_forest(g, forest)
    return Response({
        'graph6': str(g),
        'forest': str(forest),
        'contains': contains,
        'free': not contains,
        'high_degree_vertices': high_degree_vertices(g, forest),
    })
