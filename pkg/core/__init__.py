# Core app - Modelos base y utilidades compartidas
