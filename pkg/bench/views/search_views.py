from rest_framework import filters, viewsets, status
from rest_framework.decorators import action
from rest_framework.permissions import IsAuthenticated, IsAuthenticatedOrReadOnly
from rest_framework.response import Response
from django_filters.rest_framework import DjangoFilterBackend

from ..exceptions import BenchError
from ..models import SearchRun
from ..serializers import LancerRechercheSerializer, SearchRunListSerializer, SearchRunSerializer
from ..services import SearchService
from .erreurs import reponse_erreur


class SearchRunViewSet(viewsets.ReadOnlyModelViewSet):
    """ViewSet pour les recherches extrémales archivées"""
    queryset = SearchRun.objects.select_related('created_by')
    permission_classes = [IsAuthenticatedOrReadOnly]
    filter_backends = [DjangoFilterBackend, filters.OrderingFilter]
    filterset_fields = ['graph_class', 'n', 'forest', 'bound_applicable']
    ordering_fields = ['created_at', 'n', 'max_rho', 'gap']
    ordering = ['-created_at']

    def get_serializer_class(self):
        if self.action == 'list':
            return SearchRunListSerializer
        return SearchRunSerializer

    @action(detail=False, methods=['post'], permission_classes=[IsAuthenticated])
    def lancer(self, request):
        """Lance une recherche exhaustive et l'archive"""
        serializer = LancerRechercheSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)

        data = serializer.validated_data
        try:
            run = SearchService.lancer_recherche(
                data['n'], data['forest'], data['graph_class'],
                user=request.user, workers=data.get('workers'),
            )
        except BenchError as exc:
            return reponse_erreur(exc)

        return Response({
            'message': 'Recherche terminée et archivée',
            'search_run': SearchRunSerializer(run).data,
        }, status=status.HTTP_201_CREATED)

    @action(detail=False, methods=['get'])
    def statistiques(self, request):
        """Résumé des recherches archivées"""
        return Response(SearchService.statistiques())
