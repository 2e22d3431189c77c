from django.urls import path, include
from rest_framework.routers import DefaultRouter
from rest_framework.authtoken.views import obtain_auth_token

from .views import hello
from .views.graph_views import (
    construire_graphe, spectre_graphe, perron_graphe, contenance_graphe
)
from .views.bound_views import evaluer_borne, evaluer_seuil
from .views.search_views import SearchRunViewSet

# Configuration du router DRF
router = DefaultRouter()
router.register(r'search-runs', SearchRunViewSet)

urlpatterns = [
    # ===============================
    # Endpoint de test
    # ===============================
    path('hello/', hello, name='api-hello'),
    path('auth/token/', obtain_auth_token, name='api-token'),

    # ===============================
    # Graphes
    # ===============================
    path('graphs/construct/', construire_graphe, name='graph-construct'),
    path('graphs/spectrum/', spectre_graphe, name='graph-spectrum'),
    path('graphs/perron/', perron_graphe, name='graph-perron'),
    path('graphs/containment/', contenance_graphe, name='graph-containment'),

    # ===============================
    # Bornes et seuils
    # ===============================
    path('bounds/', evaluer_borne, name='bound'),
    path('thresholds/', evaluer_seuil, name='threshold'),

    # ===============================
    # Router DRF
    # ===============================
    path('', include(router.urls)),
]
