from django.contrib import admin

from .models import SearchRun

# ===============================
# Recherches extrémales
# ===============================

@admin.register(SearchRun)
class SearchRunAdmin(admin.ModelAdmin):
    """Admin des recherches archivées"""
    list_display = ('forest', 'n', 'graph_class', 'count_f_free', 'max_rho', 'bound_value',
                    'bound_applicable', 'gap', 'created_by', 'created_at')
    list_filter = ('graph_class', 'bound_applicable', 'pruned', 'created_at')
    search_fields = ('forest', 'construction')
    ordering = ('-created_at',)
    readonly_fields = ('id', 'created_at')

    fieldsets = (
        ('Paramètres', {
            'fields': ('id', 'n', 'forest', 'graph_class', 'pruned')
        }),
        ('Résultats', {
            'fields': ('count_enumerated', 'count_f_free', 'max_rho', 'argmax')
        }),
        ('Comparaison', {
            'fields': ('bound_value', 'bound_applicable', 'gap', 'construction', 'construction_rho')
        }),
        ('Traçabilité', {
            'fields': ('created_by', 'created_at')
        }),
    )
